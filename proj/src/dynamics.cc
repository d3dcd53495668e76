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

#include "policycost/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "policycost/errors.h"
#include "policycost/numeric.h"

namespace policycost {
namespace {

constexpr double kRelativeSlack = 1e-12;

bool Grows(double from, double to) {
  return to > from * (1.0 + kRelativeSlack);
}

}  // namespace

std::string_view ToString(StringencyScope scope) {
  switch (scope) {
    case StringencyScope::kFull:
      return "full";
    case StringencyScope::kVariable:
      return "variable";
  }
  return "unknown";
}

void DynamicsParams::Validate() const {
  if (!(r_min >= 0.0 && r_min < r0 && std::isfinite(r0))) {
    throw DomainError("need 0 <= r_min < r0");
  }
  if (!(stringency_exponent > 0.0 && std::isfinite(stringency_exponent))) {
    throw DomainError("stringency exponent must be positive");
  }
  if (!(max_cases > 0.0)) throw DomainError("max_cases must be positive");
}

PolicySchedule PolicySchedule::Constant(int horizon, double reproduction,
                                        double screening) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  return PolicySchedule{std::vector<double>(horizon, reproduction),
                        std::vector<double>(horizon, screening)};
}

PolicySchedule PolicySchedule::TwoSegment(int horizon, int switch_day,
                                          double first, double second) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (switch_day < 0 || switch_day > horizon) {
    throw DomainError("switch day outside the horizon");
  }
  PolicySchedule s = Constant(horizon, second);
  for (int t = 0; t < switch_day; ++t) s.reproduction[t] = first;
  return s;
}

void PolicySchedule::Validate(const DynamicsParams& params) const {
  if (reproduction.empty()) throw DomainError("empty schedule");
  if (reproduction.size() != screening.size()) {
    throw DomainError("reproduction and screening lengths differ");
  }
  for (std::size_t t = 0; t < reproduction.size(); ++t) {
    if (!(reproduction[t] >= params.r_min && reproduction[t] <= params.r0)) {
      std::ostringstream msg;
      msg << "R on day " << t << " = " << reproduction[t]
          << " outside [" << params.r_min << ", " << params.r0 << "]";
      throw DomainError(msg.str());
    }
    if (!(screening[t] >= 0.0 && screening[t] <= 1.0)) {
      throw DomainError("screening outside [0, 1] on day " + std::to_string(t));
    }
  }
}

double Stringency(double reproduction, const DynamicsParams& params) {
  if (!(reproduction >= params.r_min && reproduction <= params.r0)) {
    std::ostringstream msg;
    msg << "R = " << reproduction << " outside [" << params.r_min << ", "
        << params.r0 << "]";
    throw DomainError(msg.str());
  }
  const double share = (params.r0 - reproduction) / (params.r0 - params.r_min);
  return std::pow(share, params.stringency_exponent);
}

double Step(double cases, double reproduction, double imports, double alpha) {
  if (!(cases >= 0.0 && reproduction >= 0.0 && imports >= 0.0 &&
        alpha >= 0.0)) {
    throw DomainError("step inputs must be nonnegative");
  }
  return reproduction * cases + alpha * imports;
}

DailyCost ComputeDailyCost(const CostCurveSet& set, double cases,
                           double reproduction, double screening,
                           const DynamicsParams& params) {
  const double g = Stringency(reproduction, params);
  DailyCost cost;
  const double ct = set.transmission.Eval(cases);
  if (params.scope == StringencyScope::kFull) {
    cost.transmission = ct * g;
  } else {
    cost.transmission = set.transmission.c0 + (ct - set.transmission.c0) * g;
  }
  cost.border = set.border.EvalScreening(screening);
  cost.outbreak = set.outbreak.Eval(cases);
  cost.total = cost.transmission + cost.border + cost.outbreak;
  return cost;
}

Trajectory Simulate(const PolicySchedule& schedule, double initial_cases,
                    const CostCurveSet& set, double free_imports,
                    const DynamicsParams& params) {
  params.Validate();
  schedule.Validate(params);
  if (!(initial_cases >= 0.0)) {
    throw DomainError("initial cases must be nonnegative");
  }
  if (!(free_imports >= 0.0)) throw DomainError("imports must be nonnegative");

  Trajectory out;
  out.days.reserve(schedule.reproduction.size());
  CompensatedSum cumulative;
  double cases = initial_cases;
  for (int t = 0; t < schedule.horizon(); ++t) {
    DayRecord day;
    day.day = t;
    day.cases = cases;
    day.cost = ComputeDailyCost(set, cases, schedule.reproduction[t],
                                schedule.screening[t], params);
    cumulative.Add(day.cost.total);
    day.cumulative = cumulative.Value();
    out.days.push_back(day);
    cases = Step(cases, schedule.reproduction[t],
                 free_imports * schedule.screening[t], set.alpha);
    if (!(cases <= params.max_cases)) {
      std::ostringstream msg;
      msg << "runaway epidemic: " << cases << " cases/day on day " << t + 1;
      throw NumericalError(msg.str());
    }
  }
  out.final_cases = cases;
  out.cumulative_cost = cumulative.Value();
  return out;
}

ScheduleComparison CompareMonotoneVsRelax(double initial_cases,
                                          double target_cases, int horizon,
                                          const CostCurveSet& set,
                                          const DynamicsParams& params,
                                          const ComparisonOptions& options) {
  params.Validate();
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (!(target_cases >= 0.0 && target_cases <= initial_cases)) {
    throw DomainError("target must lie in [0, initial cases]");
  }
  if (initial_cases * std::pow(params.r_min, horizon) > target_cases) {
    std::ostringstream msg;
    msg << "target " << target_cases << " unreachable from " << initial_cases
        << " in " << horizon << " days at R_min = " << params.r_min;
    throw DomainError(msg.str());
  }
  if (!(options.reproduction_step > 0.0)) {
    throw DomainError("reproduction step must be positive");
  }

  std::vector<double> grid;
  const int steps = static_cast<int>(
      std::floor((params.r0 - params.r_min) / options.reproduction_step +
                 1e-9));
  for (int i = 0; i <= steps; ++i) {
    grid.push_back(params.r_min + options.reproduction_step * i);
  }

  ScheduleComparison out;
  out.degenerate = horizon == 1;
  const double hold_reproduction = std::clamp(1.0, params.r_min, params.r0);
  const double slack = kRelativeSlack * std::max(1.0, target_cases);

  auto evaluate = [&](double first, double second, int switch_day) {
    ScheduleCost entry;
    entry.first = first;
    entry.second = second;
    entry.switch_day = switch_day;
    const PolicySchedule schedule =
        switch_day == 0 ? PolicySchedule::Constant(horizon, first)
                        : PolicySchedule::TwoSegment(horizon, switch_day,
                                                     first, second);
    try {
      const Trajectory path =
          Simulate(schedule, initial_cases, set, 0.0, params);
      entry.final_cases = path.final_cases;
      if (options.terminal_hold_cost) {
        entry.terminal_cost = ComputeDailyCost(set, path.final_cases,
                                               hold_reproduction, 1.0, params)
                                  .total;
      }
      entry.cost = path.cumulative_cost + entry.terminal_cost;
      for (std::size_t t = 0; t < path.days.size(); ++t) {
        const double next = t + 1 < path.days.size() ? path.days[t + 1].cases
                                                     : path.final_cases;
        if (Grows(path.days[t].cases, next)) entry.growth = true;
      }
      entry.feasible = path.final_cases <= target_cases + slack;
    } catch (const NumericalError&) {
      entry.cost = std::numeric_limits<double>::infinity();
      entry.final_cases = std::numeric_limits<double>::infinity();
      entry.growth = true;
      entry.feasible = false;
    }
    out.schedules.push_back(entry);
  };

  for (double r : grid) evaluate(r, r, 0);
  for (int switch_day = 1; switch_day < horizon; ++switch_day) {
    for (double first : grid) {
      for (double second : grid) {
        if (first != second) evaluate(first, second, switch_day);
      }
    }
  }

  auto better = [&](int candidate, int incumbent) {
    return incumbent < 0 ||
           out.schedules[candidate].cost < out.schedules[incumbent].cost;
  };
  for (int i = 0; i < static_cast<int>(out.schedules.size()); ++i) {
    const ScheduleCost& s = out.schedules[i];
    if (!s.feasible) continue;
    if (better(i, out.best_index)) out.best_index = i;
    if (s.growth) {
      if (better(i, out.best_growth_index)) out.best_growth_index = i;
    } else if (better(i, out.best_monotone_index)) {
      out.best_monotone_index = i;
    }
  }
  if (out.best_growth_index >= 0) {
    if (out.best_monotone_index < 0) {
      out.monotone_cheapest = false;
    } else {
      const double mono = out.schedules[out.best_monotone_index].cost;
      const double growth = out.schedules[out.best_growth_index].cost;
      out.monotone_cheapest =
          !(growth < mono - kRelativeSlack * std::max(1.0, std::abs(mono)));
    }
  }

  out.hold_cost = std::numeric_limits<double>::quiet_NaN();
  if (initial_cases == target_cases && params.r_min <= 1.0 &&
      params.r0 >= 1.0) {
    out.hold_cost =
        Simulate(PolicySchedule::Constant(horizon, 1.0), initial_cases, set,
                 0.0, params)
            .cumulative_cost;
  }
  return out;
}

double SteadyStateDailyCost(const CostCurveSet& set, double cases,
                            const DynamicsParams& params) {
  return ComputeDailyCost(set, cases, 1.0, 1.0, params).total;
}

ZeroFloorReport CheckZeroCaseFloor(const CostCurveSet& set,
                                   const DynamicsParams& params,
                                   double max_cases, int points) {
  if (!(max_cases > 0.0) || points < 1) {
    throw DomainError("need max_cases > 0 and at least one grid point");
  }
  ZeroFloorReport report;
  report.cost_at_zero = SteadyStateDailyCost(set, 0.0, params);
  report.min_positive_cost = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= points; ++i) {
    const double x = max_cases * static_cast<double>(i) / points;
    const double c = SteadyStateDailyCost(set, x, params);
    if (c < report.min_positive_cost) {
      report.min_positive_cost = c;
      report.argmin_positive = x;
    }
  }
  report.holds = report.cost_at_zero < report.min_positive_cost;
  return report;
}

}  // namespace policycost
