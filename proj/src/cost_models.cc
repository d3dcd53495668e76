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

#include "policycost/cost_models.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "policycost/errors.h"

namespace policycost {
namespace {

constexpr int kShapeGridPoints = 1000;

void RequireNonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << what << " must be nonnegative, got " << x;
    throw DomainError(msg.str());
  }
}

// Slope of a * s^p at s >= 0, with 0^0 taken as 1.
double PowerSlope(double a, double p, double s) {
  if (p == 1.0) return a;
  return a * p * std::pow(s, p - 1.0);
}

std::string Describe(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

// Runs `check`, converting any exception into a failed check.
ShapeCheck RunCheck(const std::string& name,
                    const std::function<ShapeCheck()>& check) {
  try {
    ShapeCheck result = check();
    result.name = name;
    return result;
  } catch (const std::exception& e) {
    return ShapeCheck{name, false, e.what()};
  }
}

std::vector<double> SampleGrid(double lo, double hi) {
  std::vector<double> grid(kShapeGridPoints);
  for (int i = 0; i < kShapeGridPoints; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kShapeGridPoints - 1);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace

double TransmissionCostCurve::Eval(double cases) const {
  RequireNonnegative(cases, "case count");
  if (cases <= x_tti) return c0 + a_tti * cases;
  return c0 + a_tti * x_tti + jump + a_wide * std::pow(cases - x_tti, gamma);
}

bool TransmissionCostCurve::HasBreakdown() const {
  return x_tti > 0.0 && std::isfinite(x_tti);
}

double TransmissionCostCurve::Derivative(double cases, Side side) const {
  RequireNonnegative(cases, "case count");
  const double right_at_kink =
      jump > 0.0 ? std::numeric_limits<double>::infinity()
                 : PowerSlope(a_wide, gamma, 0.0);
  if (cases == x_tti) {
    if (!HasBreakdown()) return right_at_kink;  // x_tti = 0: left edge
    switch (side) {
      case Side::kAuto:
        throw AmbiguityError("transmission cost has a kink at x_tti = " +
                             Describe(x_tti) + "; choose a side");
      case Side::kLeft:
        return a_tti;
      case Side::kRight:
        return right_at_kink;
    }
  }
  if (cases < x_tti) return a_tti;
  return PowerSlope(a_wide, gamma, cases - x_tti);
}

double BorderCostCurve::Eval(double imports) const {
  if (!(i_free > 0.0)) throw DomainError("border i_free must be positive");
  if (!(imports >= 0.0 && imports <= i_free)) {
    throw DomainError("imports " + Describe(imports) +
                      " outside border-cost domain [0, " + Describe(i_free) +
                      "]");
  }
  return b0 * std::pow(1.0 - imports / i_free, beta);
}

double BorderCostCurve::Derivative(double imports) const {
  if (!(i_free > 0.0)) throw DomainError("border i_free must be positive");
  if (!(imports >= 0.0 && imports <= i_free)) {
    throw DomainError("imports outside border-cost domain");
  }
  return -PowerSlope(b0, beta, 1.0 - imports / i_free) / i_free;
}

double BorderCostCurve::EvalScreening(double screening) const {
  if (!(screening >= 0.0 && screening <= 1.0)) {
    throw DomainError("screening factor must lie in [0, 1]");
  }
  return b0 * std::pow(1.0 - screening, beta);
}

double BorderCostCurve::DerivativeScreening(double screening) const {
  if (!(screening >= 0.0 && screening <= 1.0)) {
    throw DomainError("screening factor must lie in [0, 1]");
  }
  return -PowerSlope(b0, beta, 1.0 - screening);
}

double OutbreakCostCurve::Eval(double cases) const {
  RequireNonnegative(cases, "case count");
  return omega * std::pow(cases, delta);
}

double OutbreakCostCurve::Derivative(double cases) const {
  RequireNonnegative(cases, "case count");
  return PowerSlope(omega, delta, cases);
}

double Derivative(const CostCurveSet& set, CurveKind kind, double point,
                  Side side) {
  switch (kind) {
    case CurveKind::kTransmission:
      return set.transmission.Derivative(point, side);
    case CurveKind::kBorder:
      return set.border.Derivative(point);
    case CurveKind::kOutbreak:
      return set.outbreak.Derivative(point);
  }
  throw DomainError("unknown curve kind");
}

bool ShapeReport::AllPassed() const {
  for (const ShapeCheck& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const ShapeCheck* ShapeReport::Find(const std::string& name) const {
  for (const ShapeCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ShapeReport ValidateShape(const CostCurveSet& set) {
  const TransmissionCostCurve& ct = set.transmission;
  const BorderCostCurve& cb = set.border;
  const OutbreakCostCurve& co = set.outbreak;
  ShapeReport report;
  auto add = [&](const std::string& name,
                 const std::function<ShapeCheck()>& check) {
    report.checks.push_back(RunCheck(name, check));
  };

  add("transmission.parameters", [&] {
    const bool ok = std::isfinite(ct.c0) && ct.a_tti >= 0.0 &&
                    std::isfinite(ct.a_tti) && ct.x_tti >= 0.0 &&
                    ct.jump >= 0.0 && std::isfinite(ct.jump) &&
                    std::isfinite(ct.a_wide) && ct.gamma >= 1.0 &&
                    std::isfinite(ct.gamma);
    return ShapeCheck{"", ok,
                      ok ? "" : "need a_tti, jump >= 0, x_tti >= 0, gamma >= 1"};
  });
  add("transmission.c0_positive", [&] {
    const double at_zero = ct.Eval(0.0);
    return ShapeCheck{"", at_zero > 0.0 && at_zero == ct.c0,
                      "c_T(0) = " + Describe(at_zero)};
  });
  add("transmission.increasing", [&] {
    const double hi = ct.HasBreakdown() ? 3.0 * ct.x_tti : 10.0;
    const std::vector<double> grid = SampleGrid(0.0, hi);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(ct.Eval(grid[i]) > ct.Eval(grid[i - 1]))) {
        return ShapeCheck{"", false,
                          "not strictly increasing near x = " +
                              Describe(grid[i])};
      }
    }
    return ShapeCheck{"", true, ""};
  });
  add("transmission.breakdown_convexity", [&] {
    if (!ct.HasBreakdown()) return ShapeCheck{"", true, "no breakdown point"};
    const bool ok = ct.a_wide > ct.a_tti;
    return ShapeCheck{"", ok,
                      "a_wide = " + Describe(ct.a_wide) +
                          ", a_tti = " + Describe(ct.a_tti) +
                          ", jump = " + Describe(ct.jump)};
  });
  add("border.parameters", [&] {
    const bool ok = cb.i_free > 0.0 && std::isfinite(cb.i_free) &&
                    cb.beta >= 1.0 && std::isfinite(cb.beta);
    return ShapeCheck{"", ok, ok ? "" : "need i_free > 0 and beta >= 1"};
  });
  add("border.b0_positive", [&] {
    const double at_zero = cb.Eval(0.0);
    return ShapeCheck{"", at_zero > 0.0 && std::isfinite(at_zero),
                      "c_b(0) = " + Describe(at_zero)};
  });
  add("border.free_endpoint", [&] {
    const double at_free = cb.Eval(cb.i_free);
    return ShapeCheck{"", at_free == 0.0,
                      "c_b(i_free) = " + Describe(at_free)};
  });
  add("border.decreasing", [&] {
    const std::vector<double> grid = SampleGrid(0.0, cb.i_free);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(cb.Eval(grid[i]) < cb.Eval(grid[i - 1]))) {
        return ShapeCheck{"", false,
                          "not strictly decreasing near I = " +
                              Describe(grid[i])};
      }
    }
    return ShapeCheck{"", true, ""};
  });
  add("border.convex", [&] {
    const std::vector<double> grid = SampleGrid(0.0, cb.i_free);
    const double slack = 1e-12 * std::max(1.0, cb.b0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const double second = cb.Eval(grid[i + 1]) - 2.0 * cb.Eval(grid[i]) +
                            cb.Eval(grid[i - 1]);
      if (second < -slack) {
        return ShapeCheck{"", false,
                          "negative second difference at I = " +
                              Describe(grid[i])};
      }
    }
    return ShapeCheck{"", true, ""};
  });
  add("outbreak.parameters", [&] {
    const bool ok = co.omega >= 0.0 && std::isfinite(co.omega) &&
                    co.delta >= 1.0 && std::isfinite(co.delta);
    return ShapeCheck{"", ok, ok ? "" : "need omega >= 0 and delta >= 1"};
  });
  add("outbreak.zero_at_origin", [&] {
    const double at_zero = co.Eval(0.0);
    return ShapeCheck{"", at_zero == 0.0, "c_O(0) = " + Describe(at_zero)};
  });
  add("outbreak.nondecreasing", [&] {
    const std::vector<double> grid = SampleGrid(0.0, 10.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (co.Eval(grid[i]) < co.Eval(grid[i - 1])) {
        return ShapeCheck{"", false,
                          "decreasing near x = " + Describe(grid[i])};
      }
    }
    return ShapeCheck{"", true, ""};
  });
  add("alpha", [&] {
    const bool ok = set.alpha >= 1.0 && std::isfinite(set.alpha);
    return ShapeCheck{"", ok, "alpha = " + Describe(set.alpha)};
  });
  return report;
}

}  // namespace policycost
