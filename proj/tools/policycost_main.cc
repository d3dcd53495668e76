// Copyright 2026 The policycost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// policycost <command> --config <path> [--out <dir>] [--format csv|json]
//            [--seed <u64>] [--grid <n>] [--tol <float>]
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 runtime invariant violation.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "policycost/errors.h"
#include "policycost/report.h"
#include "policycost/scenario.h"

int main(int argc, char** argv) {
  using namespace policycost;

  CLI::App app{"Cost-of-policy scenario tool for virus suppression"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> tol;

  std::vector<std::string> names(CommandNames().begin(), CommandNames().end());
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Scenario JSON file")
      ->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--grid", grid, "Optimizer grid points");
  app.add_option("--tol", tol, "Equilibrium tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  RunOptions options;
  options.out_dir = out_dir;
  if (format.has_value()) {
    options.format = *format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  }
  options.seed = seed;
  options.grid_points = grid;
  options.tolerance = tol;

  try {
    const ScenarioConfig config = LoadConfig(config_path);
    for (const auto& path : RunCommand(config, command, options)) {
      std::cout << path.string() << "\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const AmbiguityError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  }
}
