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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "policycost/dynamics.h"
#include "policycost/errors.h"
#include "policycost/scenario.h"
#include "test_util.h"

namespace policycost {
namespace {

DynamicsParams FullScope() {
  DynamicsParams p;
  p.scope = StringencyScope::kFull;
  return p;
}

CostCurveSet DailyCostSet() {
  CostCurveSet set;
  set.transmission = {1.0, 1.0, testing::kInf, 0.0, 2.0, 1.0};
  set.border = {2.0, 4.0, 1.0};
  set.outbreak = {0.0, 1.0};
  return set;
}

ScenarioConfig ScheduleFixture() {
  return LoadConfig(std::string(POLICYCOST_SCENARIO_DIR) +
                    "/schedule_curves.json");
}

TEST_CASE("step") {
  CHECK(Step(0.0, 2.0, 0.0, 1.0) == 0.0);
  CHECK(Step(100.0, 0.5, 0.0, 1.0) == 50.0);
  CHECK(Step(10.0, 1.0, 1.0, 2.0) == 12.0);
  CHECK_THROWS_AS(Step(-1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("stringency") {
  const DynamicsParams p;
  CHECK(Stringency(p.r0, p) == 0.0);
  CHECK(Stringency(p.r_min, p) == 1.0);
  CHECK(Stringency(1.5, p) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Stringency(2.6, p), DomainError);
  CHECK_THROWS_AS(Stringency(0.4, p), DomainError);
  DynamicsParams squared = p;
  squared.stringency_exponent = 2.0;
  CHECK(Stringency(1.5, squared) == doctest::Approx(0.25));
}

TEST_CASE("daily cost examples, full scope") {
  const DynamicsParams p = FullScope();
  const CostCurveSet set = DailyCostSet();
  CHECK(ComputeDailyCost(set, 0.0, p.r0, 1.0, p).total == 0.0);
  CHECK(ComputeDailyCost(set, 0.0, p.r_min, 0.0, p).total == 3.0);
  // (1 + 10) * 0.5 + 2 * (1 - 0.25).
  const DailyCost c = ComputeDailyCost(set, 10.0, 1.5, 0.25, p);
  CHECK(c.transmission == doctest::Approx(5.5));
  CHECK(c.border == doctest::Approx(1.5));
  CHECK(c.total == doctest::Approx(7.0));
}

TEST_CASE("daily cost, variable scope keeps the baseline") {
  const DynamicsParams p;
  const CostCurveSet set = DailyCostSet();
  CHECK(ComputeDailyCost(set, 0.0, p.r0, 1.0, p).total == 1.0);
  CHECK(ComputeDailyCost(set, 0.0, p.r_min, 0.0, p).total == 3.0);
  CHECK(ComputeDailyCost(set, 10.0, 1.5, 0.25, p).total ==
        doctest::Approx(1.0 + 5.0 + 1.5));
  CHECK(ToString(StringencyScope::kVariable) == "variable");
  CHECK(ToString(StringencyScope::kFull) == "full");
}

TEST_CASE("simulate") {
  const DynamicsParams p;
  const CostCurveSet set = DailyCostSet();
  const Trajectory t = Simulate(PolicySchedule::Constant(3, 0.5), 100.0, set, 0.0, p);
  REQUIRE(t.days.size() == 3);
  CHECK(t.days[0].cases == 100.0);
  CHECK(t.days[1].cases == 50.0);
  CHECK(t.days[2].cases == 25.0);
  CHECK(t.final_cases == 12.5);
  double sum = 0.0;
  for (const DayRecord& d : t.days) {
    sum += d.cost.total;
    CHECK(d.cumulative == doctest::Approx(sum).epsilon(1e-14));
  }
  CHECK(t.cumulative_cost == doctest::Approx(sum).epsilon(1e-14));

  PolicySchedule bad = PolicySchedule::Constant(3, 0.5);
  bad.screening[1] = 1.5;
  CHECK_THROWS_AS(Simulate(bad, 1.0, set, 0.0, p), DomainError);
  CHECK_THROWS_AS(Simulate(PolicySchedule::Constant(100, 2.5), 1e6, set, 0.0, p),
                  NumericalError);
}

TEST_CASE("absorbing zero") {
  std::mt19937_64 rng(8);
  const DynamicsParams p;
  for (int trial = 0; trial < 20; ++trial) {
    PolicySchedule s = PolicySchedule::Constant(40, 1.0);
    for (double& r : s.reproduction) r = testing::Uniform(rng, p.r_min, p.r0);
    for (double& f : s.screening) f = testing::Uniform(rng, 0.0, 1.0);
    const Trajectory t = Simulate(s, 0.0, testing::RandomCurveSet(rng), 0.0, p);
    for (const DayRecord& d : t.days) CHECK(d.cases == 0.0);
    CHECK(t.final_cases == 0.0);
  }
}

TEST_CASE("superposition of the linear recurrence") {
  std::mt19937_64 rng(21);
  const DynamicsParams p;
  const CostCurveSet set = testing::RandomCurveSet(rng);
  PolicySchedule s = PolicySchedule::Constant(25, 1.0);
  for (double& r : s.reproduction) r = testing::Uniform(rng, p.r_min, 1.4);
  for (double& f : s.screening) f = testing::Uniform(rng, 0.0, 1.0);
  const double imports = 0.7;
  const Trajectory homogeneous = Simulate(s, 40.0, set, 0.0, p);
  const Trajectory forced = Simulate(s, 0.0, set, imports, p);
  const Trajectory both = Simulate(s, 40.0, set, imports, p);
  for (double lambda : {0.5, 2.0, 3.5}) {
    const Trajectory scaled = Simulate(s, 0.0, set, lambda * imports, p);
    for (std::size_t t = 0; t < scaled.days.size(); ++t) {
      CHECK(scaled.days[t].cases ==
            doctest::Approx(lambda * forced.days[t].cases).epsilon(1e-12));
    }
  }
  for (std::size_t t = 0; t < both.days.size(); ++t) {
    CHECK(both.days[t].cases ==
          doctest::Approx(homogeneous.days[t].cases + forced.days[t].cases)
              .epsilon(1e-12));
  }
}

TEST_CASE("schedules") {
  const PolicySchedule s = PolicySchedule::TwoSegment(5, 2, 1.5, 0.5);
  REQUIRE(s.horizon() == 5);
  CHECK(s.reproduction == std::vector<double>{1.5, 1.5, 0.5, 0.5, 0.5});
  CHECK(s.screening == std::vector<double>(5, 1.0));
  const PolicySchedule out_of_range = PolicySchedule::Constant(3, 3.0);
  CHECK_THROWS_AS(out_of_range.Validate(DynamicsParams{}), DomainError);
}

TEST_CASE("monotone schedules win on every bundled curve set") {
  const ScenarioConfig config = ScheduleFixture();
  const DynamicsConfig& dyn = config.dynamics;
  REQUIRE(config.regions.size() == 3);
  for (const RegionState& region : config.regions) {
    const ScheduleComparison cmp = CompareMonotoneVsRelax(
        dyn.initial_cases, dyn.target_cases, dyn.horizon, region.curves,
        dyn.params);
    CHECK(cmp.monotone_cheapest);
    CHECK_FALSE(cmp.degenerate);
    REQUIRE(cmp.best_index >= 0);
    REQUIRE(cmp.best_monotone_index >= 0);
    REQUIRE(cmp.best_growth_index >= 0);
    CHECK_FALSE(cmp.schedules[cmp.best_index].growth);
    CHECK(cmp.schedules[cmp.best_growth_index].cost >=
          cmp.schedules[cmp.best_monotone_index].cost);
    for (const ScheduleCost& s : cmp.schedules) {
      if (s.feasible) CHECK(s.final_cases <= dyn.target_cases);
    }
  }
}

TEST_CASE("full-scope stringency admits a relax-at-the-end counterexample") {
  const ScenarioConfig config = ScheduleFixture();
  const DynamicsConfig& dyn = config.dynamics;
  ComparisonOptions no_terminal;
  no_terminal.terminal_hold_cost = false;
  bool any_violation = false;
  for (const RegionState& region : config.regions) {
    const ScheduleComparison cmp =
        CompareMonotoneVsRelax(dyn.initial_cases, dyn.target_cases,
                               dyn.horizon, region.curves, FullScope(),
                               no_terminal);
    any_violation = any_violation || !cmp.monotone_cheapest;
  }
  CHECK(any_violation);
}

TEST_CASE("comparison edge cases") {
  const CostCurveSet set = ScheduleFixture().regions[0].curves;
  const DynamicsParams p;
  const ScheduleComparison single = CompareMonotoneVsRelax(100.0, 60.0, 1, set, p);
  CHECK(single.degenerate);
  for (const ScheduleCost& s : single.schedules) CHECK(s.switch_day == 0);

  const ScheduleComparison hold = CompareMonotoneVsRelax(10.0, 10.0, 5, set, p);
  CHECK(std::isfinite(hold.hold_cost));
  CHECK(hold.hold_cost > 0.0);
  const ScheduleComparison zero = CompareMonotoneVsRelax(0.0, 0.0, 5, set, p);
  CHECK(zero.best_index >= 0);

  // 0.5^3 * 100 = 12.5 > 1: unreachable in three days.
  CHECK_THROWS_AS(CompareMonotoneVsRelax(100.0, 1.0, 3, set, p), DomainError);
  CHECK_THROWS_AS(CompareMonotoneVsRelax(1.0, 2.0, 3, set, p), DomainError);
}

TEST_CASE("zero-case floor") {
  const ScenarioConfig config = ScheduleFixture();
  for (const RegionState& region : config.regions) {
    for (const DynamicsParams& p : {DynamicsParams{}, FullScope()}) {
      const ZeroFloorReport r = CheckZeroCaseFloor(region.curves, p, 100.0);
      CHECK(r.holds);
      CHECK(r.cost_at_zero < r.min_positive_cost);
    }
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    CHECK(CheckZeroCaseFloor(testing::RandomCurveSet(rng), DynamicsParams{}, 50.0)
              .holds);
  }
}

}  // namespace
}  // namespace policycost
