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

#include "policycost/cost_models.h"
#include "policycost/errors.h"
#include "test_util.h"

namespace policycost {
namespace {

using testing::kInf;

TransmissionCostCurve BreakdownCurve() {
  return {1.0, 0.5, 10.0, 2.0, 1.0, 2.0};
}

TEST_CASE("transmission evaluation") {
  const TransmissionCostCurve ct = BreakdownCurve();
  CHECK(ct.Eval(0.0) == 1.0);
  CHECK(ct.Eval(4.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ct.Eval(12.0) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(ct.Eval(10.0) == doctest::Approx(6.0).epsilon(1e-15));
  // Without breakdown the TTI regime is unbounded.
  CHECK(TransmissionCostCurve{1.0, 0.5, kInf, 2.0, 1.0, 2.0}.Eval(1e6) ==
        doctest::Approx(1.0 + 5e5));
  // x_tti = 0: pure power curve.
  CHECK(TransmissionCostCurve{1.0, 0.0, 0.0, 0.0, 1.0, 2.0}.Eval(3.0) == 10.0);
  CHECK_THROWS_AS(ct.Eval(-1e-9), DomainError);
}

TEST_CASE("border evaluation") {
  const BorderCostCurve cb{2.0, 4.0, 1.0};
  CHECK(cb.Eval(4.0) == 0.0);
  CHECK(cb.Eval(0.0) == 2.0);
  CHECK(cb.Eval(1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(cb.Eval(4.0000001), DomainError);
  CHECK_THROWS_AS(cb.Eval(-0.1), DomainError);
  CHECK(cb.EvalScreening(1.0) == 0.0);
  CHECK(cb.EvalScreening(0.0) == 2.0);
  CHECK(BorderCostCurve{2.0, 4.0, 2.0}.EvalScreening(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(cb.EvalScreening(1.2), DomainError);
}

TEST_CASE("outbreak evaluation") {
  CHECK(OutbreakCostCurve{3.0, 1.0}.Eval(0.0) == 0.0);
  CHECK(OutbreakCostCurve{3.0, 1.0}.Eval(2.0) == doctest::Approx(6.0));
  CHECK(OutbreakCostCurve{1.0, 2.0}.Eval(3.0) == doctest::Approx(9.0));
  const OutbreakCostCurve co{1.0, 2.0};
  CHECK_THROWS_AS(co.Eval(-3.0), DomainError);
}

TEST_CASE("analytic derivatives") {
  CHECK(BorderCostCurve{2.0, 4.0, 1.0}.Derivative(4.0) == doctest::Approx(-0.5));
  CHECK(BorderCostCurve{2.0, 4.0, 1.0}.Derivative(0.0) == doctest::Approx(-0.5));
  CHECK(BorderCostCurve{2.0, 4.0, 2.0}.Derivative(4.0) == 0.0);
  const TransmissionCostCurve ct = BreakdownCurve();
  CHECK(ct.Derivative(3.0) == 0.5);
  CHECK(ct.Derivative(12.0) == doctest::Approx(4.0));
  CHECK(OutbreakCostCurve{1.0, 2.0}.Derivative(3.0) == doctest::Approx(6.0));

  CostCurveSet set;
  set.transmission = ct;
  CHECK(Derivative(set, CurveKind::kTransmission, 12.0) == doctest::Approx(4.0));
  set.border = {2.0, 4.0, 1.0};
  CHECK(Derivative(set, CurveKind::kBorder, 1.0) == doctest::Approx(-0.5));
}

TEST_CASE("kink requires a side") {
  const TransmissionCostCurve ct = BreakdownCurve();
  CHECK_THROWS_AS(ct.Derivative(10.0), AmbiguityError);
  CHECK(ct.Derivative(10.0, Side::kLeft) == 0.5);
  CHECK(std::isinf(ct.Derivative(10.0, Side::kRight)));
  TransmissionCostCurve no_jump = ct;
  no_jump.jump = 0.0;
  no_jump.gamma = 1.0;
  CHECK(no_jump.Derivative(10.0, Side::kRight) == 1.0);
  CHECK(no_jump.Derivative(10.0, Side::kRight) >
        no_jump.Derivative(10.0, Side::kLeft));
  // Away from the kink the side selector is irrelevant.
  CHECK(ct.Derivative(5.0, Side::kRight) == ct.Derivative(5.0, Side::kLeft));
}

TEST_CASE("derivatives agree with central differences") {
  std::mt19937_64 rng(2026);
  int checked = 0;
  while (checked < 300) {
    const CostCurveSet set = testing::RandomCurveSet(rng);
    for (int i = 0; i < 100; ++i, ++checked) {
      const double scale = set.transmission.HasBreakdown()
                               ? 2.0 * set.transmission.x_tti
                               : 10.0;
      const double x = testing::Uniform(rng, 0.01, scale);
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      const double kink = set.transmission.x_tti;
      if (std::abs(x - kink) < 10.0 * h) continue;
      const auto central = [h](auto f, double p) {
        return (f(p + h) - f(p - h)) / (2.0 * h);
      };
      const auto close = [](double analytic, double numeric) {
        return std::abs(analytic - numeric) <=
               1e-6 * std::max(1.0, std::abs(analytic));
      };
      const double fd_t = central(
          [&](double p) { return set.transmission.Eval(p); }, x);
      CHECK(close(set.transmission.Derivative(x), fd_t));
      const double fd_o = central(
          [&](double p) { return set.outbreak.Eval(p); }, x);
      CHECK(close(set.outbreak.Derivative(x), fd_o));
      const double imports =
          testing::Uniform(rng, 0.05, 0.95) * set.border.i_free;
      const double hb = 1e-6 * std::max(1.0, imports);
      const double fd_b = (set.border.Eval(imports + hb) -
                           set.border.Eval(imports - hb)) / (2.0 * hb);
      CHECK(close(set.border.Derivative(imports), fd_b));
    }
  }
}

TEST_CASE("monotonicity and border convexity on random curves") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const CostCurveSet set = testing::RandomCurveSet(rng);
    double prev_t = -kInf;
    double prev_o = -kInf;
    for (int i = 0; i <= 500; ++i) {
      const double x = 0.04 * i;
      const double t = set.transmission.Eval(x);
      const double o = set.outbreak.Eval(x);
      CHECK(t > prev_t);
      CHECK(o >= prev_o);
      prev_t = t;
      prev_o = o;
    }
    std::vector<double> b;
    for (int i = 0; i <= 200; ++i) {
      b.push_back(set.border.Eval(std::min(set.border.i_free, set.border.i_free * i / 200.0)));
    }
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] < b[i - 1]);
    for (std::size_t i = 2; i < b.size(); ++i) {
      CHECK(b[i] - 2.0 * b[i - 1] + b[i - 2] >= -1e-12);
    }
    CHECK(set.border.Eval(set.border.i_free) == 0.0);
    CHECK(set.outbreak.Eval(0.0) == 0.0);
    CHECK(set.transmission.Eval(0.0) == set.transmission.c0);
    // With gamma > 1 and no jump the power term starts flat, so the one-sided
    // slopes are not ordered; the field invariant a_wide > a_tti applies.
    const bool slopes_ordered =
        set.transmission.jump > 0.0 || set.transmission.gamma == 1.0;
    if (set.transmission.HasBreakdown() && slopes_ordered) {
      const double k = set.transmission.x_tti;
      CHECK(set.transmission.Derivative(k, Side::kRight) >
            set.transmission.Derivative(k, Side::kLeft));
    }
  }
}

TEST_CASE("shape validation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const ShapeReport report = ValidateShape(testing::RandomCurveSet(rng));
    CHECK(report.AllPassed());
  }
  CHECK(ValidateShape(CostCurveSet{}).AllPassed());

  CostCurveSet bad;
  bad.transmission = {1.0, 2.0, 3.0, 0.0, 1.0, 1.0};
  ShapeReport report = ValidateShape(bad);
  CHECK_FALSE(report.AllPassed());
  REQUIRE(report.Find("transmission.breakdown_convexity") != nullptr);
  CHECK_FALSE(report.Find("transmission.breakdown_convexity")->passed);
  CHECK(report.Find("border.b0_positive")->passed);

  bad = CostCurveSet{};
  bad.border.b0 = 0.0;
  report = ValidateShape(bad);
  CHECK_FALSE(report.Find("border.b0_positive")->passed);
  CHECK(report.Find("transmission.breakdown_convexity")->passed);

  bad = CostCurveSet{};
  bad.transmission.c0 = 0.0;
  CHECK_FALSE(ValidateShape(bad).Find("transmission.c0_positive")->passed);
  bad = CostCurveSet{};
  bad.alpha = 0.5;
  CHECK_FALSE(ValidateShape(bad).Find("alpha")->passed);
  bad = CostCurveSet{};
  bad.border.beta = 0.5;
  CHECK_FALSE(ValidateShape(bad).AllPassed());
  bad = CostCurveSet{};
  bad.outbreak.omega = -1.0;
  CHECK_FALSE(ValidateShape(bad).AllPassed());
  CHECK(ValidateShape(CostCurveSet{}).Find("no.such.check") == nullptr);
}

}  // namespace
}  // namespace policycost
