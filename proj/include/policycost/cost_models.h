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

// Parametric cost curves, all in abstract cost units per day.
//
//   transmission  c_T(x) = c0 + a_tti x                              x <= x_tti
//                        = c0 + a_tti x_tti + J + a_wide (x - x_tti)^gamma   x > x_tti
//   border        c_b(I) = b0 (1 - I / I_free)^beta,   0 <= I <= I_free
//   outbreak      c_O(x) = omega x^delta
//
// x_tti = +inf keeps the TTI regime forever; x_tti = 0 drops it, leaving
// c0 + J + a_wide x^gamma.

#ifndef POLICYCOST_COST_MODELS_H_
#define POLICYCOST_COST_MODELS_H_

#include <limits>
#include <string>
#include <vector>

namespace policycost {

enum class Side { kAuto, kLeft, kRight };

struct TransmissionCostCurve {
  double c0 = 1.0;
  double a_tti = 0.5;
  double x_tti = std::numeric_limits<double>::infinity();
  double jump = 0.0;
  double a_wide = 1.0;
  double gamma = 1.0;

  double Eval(double cases) const;
  // Throws AmbiguityError at an interior kink when side is kAuto. The right
  // derivative at a kink with a positive jump is +inf.
  double Derivative(double cases, Side side = Side::kAuto) const;
  // True when x_tti is a genuine interior breakdown point.
  bool HasBreakdown() const;

  bool operator==(const TransmissionCostCurve&) const = default;
};

struct BorderCostCurve {
  double b0 = 1.0;
  double i_free = 1.0;
  double beta = 1.0;

  double Eval(double imports) const;
  double Derivative(double imports) const;

  // Cost when a link whose unrestricted imports are the curve's free level is
  // throttled to fraction `screening`: b0 (1 - F)^beta. Independent of the
  // link's import volume, so it stays defined when that volume is zero.
  double EvalScreening(double screening) const;
  double DerivativeScreening(double screening) const;

  bool operator==(const BorderCostCurve&) const = default;
};

struct OutbreakCostCurve {
  double omega = 0.0;
  double delta = 1.0;

  double Eval(double cases) const;
  double Derivative(double cases) const;

  bool operator==(const OutbreakCostCurve&) const = default;
};

struct CostCurveSet {
  TransmissionCostCurve transmission;
  BorderCostCurve border;
  OutbreakCostCurve outbreak;
  double alpha = 1.0;  // total resulting cases per imported case

  bool operator==(const CostCurveSet&) const = default;
};

enum class CurveKind { kTransmission, kBorder, kOutbreak };

// Analytic derivative of one member curve of `set`.
double Derivative(const CostCurveSet& set, CurveKind kind, double point,
                  Side side = Side::kAuto);

struct ShapeCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ShapeReport {
  std::vector<ShapeCheck> checks;

  bool AllPassed() const;
  const ShapeCheck* Find(const std::string& name) const;
};

// Samples each curve on a 1000-point grid and checks monotonicity
// directions, endpoint values, parameter ranges and convexity at the TTI
// breakdown. Never throws; failures are reported.
ShapeReport ValidateShape(const CostCurveSet& set);

}  // namespace policycost

#endif  // POLICYCOST_COST_MODELS_H_
