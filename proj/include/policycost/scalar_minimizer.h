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

// Bounded minimization of a one-dimensional, piecewise-smooth objective.
//
// A uniform grid brackets every grid-local minimum; each bracket is refined
// by golden-section search and, where the analytic derivative changes sign
// across the final bracket without a kink inside, polished by bisection on
// the derivative. Known kinks and both endpoints are evaluated as extra
// candidates. The grid never loses: the result is no worse than any grid
// sample.

#ifndef POLICYCOST_SCALAR_MINIMIZER_H_
#define POLICYCOST_SCALAR_MINIMIZER_H_

#include <functional>
#include <vector>

#include "policycost/cost_models.h"

namespace policycost {

struct ScalarObjective {
  std::function<double(double)> value;
  // One-sided derivative; only called with kLeft or kRight.
  std::function<double(double, Side)> derivative;
  // Points where the derivative may jump or the value may be discontinuous.
  std::vector<double> kinks;
};

struct ScalarMinimizerOptions {
  int grid_points = 10000;
  // Golden-section stops once the bracket is narrower than this fraction of
  // the search interval.
  double relative_width = 1e-8;
  // Candidate values within this (scaled) tolerance of the best count as
  // ties, and the smallest argument among them wins.
  double tie_tolerance = 1e-12;
  int max_refined_basins = 16;
};

struct ScalarMinimum {
  double argument = 0.0;
  double value = 0.0;
  bool at_lower = false;
  bool at_upper = false;
  bool at_kink = false;
  // Objective derivative from each side at the argument; NaN on the side
  // that falls outside the interval.
  double left_derivative = 0.0;
  double right_derivative = 0.0;
  int evaluations = 0;
};

// Golden-section search for a minimum of `f` on [lo, hi]; returns the final
// bracket.
std::pair<double, double> GoldenSectionBracket(
    const std::function<double(double)>& f, double lo, double hi,
    double width);

// Throws NumericalError if the objective is non-finite on the grid.
ScalarMinimum MinimizeBounded(const ScalarObjective& objective, double lo,
                              double hi,
                              const ScalarMinimizerOptions& options = {});

}  // namespace policycost

#endif  // POLICYCOST_SCALAR_MINIMIZER_H_
