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

// Command dispatch and deterministic report files for the scenario tool.
//
// Commands: import-dist, optimize, game, simulate, compare-schedules,
// validate. Numbers are written with 12 significant digits. CSV reports get a
// sibling `<stem>.config.json` echoing the effective configuration; JSON
// reports embed it under "config".

#ifndef POLICYCOST_REPORT_H_
#define POLICYCOST_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policycost/scenario.h"

namespace policycost {

enum class OutputFormat { kCsv, kJson };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<OutputFormat> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_points;
  std::optional<double> tolerance;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalFailure = 2;
inline constexpr int kExitInvariantViolation = 3;

const std::vector<std::string_view>& CommandNames();

// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string FormatNumber(double value);

// Rounds to 12 significant digits so JSON output matches the CSV text.
double RoundForOutput(double value);

// Applies command-line overrides to a copy of `config`.
ScenarioConfig ApplyOverrides(const ScenarioConfig& config,
                              const RunOptions& options);

// Runs `command` and writes its report files; returns the paths written.
// Throws ConfigError for unknown commands or configs the command cannot use.
std::vector<std::filesystem::path> RunCommand(const ScenarioConfig& config,
                                              std::string_view command,
                                              const RunOptions& options);

}  // namespace policycost

#endif  // POLICYCOST_REPORT_H_
