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

// Discrete-time case trajectories under a policy schedule.
//
// Cases follow x_{t+1} = R_t x_t + alpha I_t, with I_t = I_ik F_t the daily
// arriving imports. Daily cost couples the transmission cost to the
// stringency implied by R_t through
//   g(R) = ((R0 - R) / (R0 - R_min))^p,   g(R0) = 0, g(R_min) = 1.

#ifndef POLICYCOST_DYNAMICS_H_
#define POLICYCOST_DYNAMICS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "policycost/cost_models.h"

namespace policycost {

enum class StringencyScope {
  // Stringency scales the whole transmission cost: c_T(x) g(R).
  kFull,
  // The baseline c0 is paid regardless and stringency scales only the
  // case-driven part: c0 + (c_T(x) - c0) g(R).
  kVariable,
};

std::string_view ToString(StringencyScope scope);

struct DynamicsParams {
  double r0 = 2.5;     // modeling default, growth with no measures
  double r_min = 0.5;  // modeling default, growth under maximal measures
  double stringency_exponent = 1.0;
  StringencyScope scope = StringencyScope::kVariable;
  // Runaway guard on daily cases.
  double max_cases = 1e12;

  // Throws DomainError unless r_min < r0 and the exponent is positive.
  void Validate() const;
  bool operator==(const DynamicsParams&) const = default;
};

struct PolicySchedule {
  std::vector<double> reproduction;  // R_t
  std::vector<double> screening;     // F_t

  static PolicySchedule Constant(int horizon, double reproduction,
                                 double screening = 1.0);
  // `first` for days [0, switch_day), `second` afterwards.
  static PolicySchedule TwoSegment(int horizon, int switch_day, double first,
                                   double second);

  int horizon() const { return static_cast<int>(reproduction.size()); }
  void Validate(const DynamicsParams& params) const;
};

struct DailyCost {
  double transmission = 0.0;
  double border = 0.0;
  double outbreak = 0.0;
  double total = 0.0;
};

struct DayRecord {
  int day = 0;
  double cases = 0.0;
  DailyCost cost;
  double cumulative = 0.0;
};

struct Trajectory {
  std::vector<DayRecord> days;
  double final_cases = 0.0;  // x_T, one step past the last recorded day
  double cumulative_cost = 0.0;
};

double Stringency(double reproduction, const DynamicsParams& params);

// x_{t+1} = R x + alpha imports.
double Step(double cases, double reproduction, double imports, double alpha);

// Border cost is measured against the link's unrestricted flow, so it
// depends only on F: b0 (1 - F)^beta.
DailyCost ComputeDailyCost(const CostCurveSet& set, double cases,
                           double reproduction, double screening,
                           const DynamicsParams& params);

// Throws NumericalError when cases exceed params.max_cases.
Trajectory Simulate(const PolicySchedule& schedule, double initial_cases,
                    const CostCurveSet& set, double free_imports,
                    const DynamicsParams& params);

struct ScheduleCost {
  double first = 0.0;
  double second = 0.0;
  int switch_day = 0;  // 0 for single-segment schedules
  double cost = 0.0;           // horizon cost plus terminal cost
  double terminal_cost = 0.0;  // cost charged on the endpoint x_T
  double final_cases = 0.0;
  bool growth = false;    // some day-over-day case increase
  bool feasible = false;  // reaches the target without running away
};

struct ScheduleComparison {
  std::vector<ScheduleCost> schedules;
  int best_index = -1;
  int best_monotone_index = -1;
  int best_growth_index = -1;
  // No feasible growth-containing schedule is strictly cheaper than the best
  // monotone one.
  bool monotone_cheapest = true;
  // Only single-segment schedules exist (horizon 1).
  bool degenerate = false;
  // Cost of holding cases constant (R = 1) when the start already meets the
  // target; NaN otherwise.
  double hold_cost = 0.0;
};

struct ComparisonOptions {
  double reproduction_step = 0.1;
  // Charge one day of steady-state holding cost on the endpoint x_T. Without
  // it, growth on the last step is never costed and relaxing on the final
  // day always looks cheaper.
  bool terminal_hold_cost = true;
};

// Enumerates every single- and two-segment piecewise-constant R schedule on
// the reproduction grid, with no imports and open borders. Throws
// DomainError if the target exceeds the start or cannot be reached at R_min.
ScheduleComparison CompareMonotoneVsRelax(double initial_cases,
                                          double target_cases, int horizon,
                                          const CostCurveSet& set,
                                          const DynamicsParams& params,
                                          const ComparisonOptions& options = {});

// Daily cost of holding x constant with no imports (R = 1, F = 1).
double SteadyStateDailyCost(const CostCurveSet& set, double cases,
                            const DynamicsParams& params);

struct ZeroFloorReport {
  double cost_at_zero = 0.0;
  double min_positive_cost = 0.0;
  double argmin_positive = 0.0;
  bool holds = false;  // cost at zero strictly below every grid point x > 0
};

// Checks SteadyStateDailyCost on `points` evenly spaced x in (0, max_cases].
ZeroFloorReport CheckZeroCaseFloor(const CostCurveSet& set,
                                   const DynamicsParams& params,
                                   double max_cases, int points = 1000);

}  // namespace policycost

#endif  // POLICYCOST_DYNAMICS_H_
