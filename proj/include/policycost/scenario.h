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

// Scenario configuration: a single JSON object with the blocks `regions`,
// `links`, `solver` and `dynamics`. Curve parameters sit under each region's
// `curves` block.

#ifndef POLICYCOST_SCENARIO_H_
#define POLICYCOST_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "policycost/dynamics.h"
#include "policycost/game_solver.h"

namespace policycost {

struct SolverConfig {
  int grid_points = 10000;
  double tolerance = 1e-9;  // Nash sup-norm move
  double foc_tolerance = 1e-6;
  int max_iterations = 100;
  double damping = 0.5;
  std::optional<std::uint64_t> seed;
  bool monte_carlo = false;
  std::int64_t monte_carlo_trials = 100000;
  int cooperative_grid_points = 21;
  bool joint_best_response = false;

  bool operator==(const SolverConfig&) const = default;
};

struct ScheduleSegment {
  int days = 1;
  double reproduction = 1.0;
  double screening = 1.0;

  bool operator==(const ScheduleSegment&) const = default;
};

struct DynamicsConfig {
  DynamicsParams params;
  int horizon = 30;
  double initial_cases = 100.0;
  double target_cases = 1.0;
  double reproduction_step = 0.1;
  bool terminal_hold_cost = true;
  // Empty: hold R_min with open borders for the whole horizon.
  std::vector<ScheduleSegment> schedule;

  PolicySchedule BuildSchedule() const;
  bool operator==(const DynamicsConfig&) const = default;
};

struct ScenarioConfig {
  std::vector<RegionState> regions;
  std::vector<TravelLink> links;
  SolverConfig solver;
  DynamicsConfig dynamics;

  const RegionState* FindRegion(const std::string& id) const;
  // Two-region game view; missing links carry zero travelers. Throws
  // ConfigError unless there are exactly two regions.
  GameState ToGameState() const;
  GameOptions ToGameOptions() const;
  OptimizerOptions ToOptimizerOptions() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Both throw ConfigError listing every problem with its field path.
ScenarioConfig ParseConfig(const nlohmann::json& document);
ScenarioConfig LoadConfig(const std::filesystem::path& path);

// Full-precision echo that ParseConfig maps back to an equal config.
nlohmann::json ConfigToJson(const ScenarioConfig& config);

}  // namespace policycost

#endif  // POLICYCOST_SCENARIO_H_
