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

// Single-region policy optimization.
//
// With imports I the region pays c_T(alpha I) + c_b(I): domestic cases are
// held at zero because c_T is increasing. With a known inbound flow I_ik and
// screening factor F the region pays c_T(x + alpha I_ik F) + c_b(I_ik F).

#ifndef POLICYCOST_REGION_OPTIMIZER_H_
#define POLICYCOST_REGION_OPTIMIZER_H_

#include <string_view>

#include "policycost/cost_models.h"

namespace policycost {

enum class Classification { kInterior, kBoundaryClosed, kBoundaryOpen };

std::string_view ToString(Classification c);

struct OptimizerOptions {
  int grid_points = 10000;
  double relative_width = 1e-8;
  double foc_tolerance = 1e-6;
};

struct OptimizationResult {
  double argument = 0.0;  // I* (cases/day) or F* (fraction)
  double cost = 0.0;
  Classification classification = Classification::kInterior;
  // Interior: distance from zero to [left, right] objective derivative.
  // Boundary: the signed one-sided derivative at the boundary.
  double foc_residual = 0.0;
  // Objective derivative at the lower end (from the right) and the upper end
  // (from the left).
  double derivative_at_closed = 0.0;
  double derivative_at_open = 0.0;
  // Closed: marginal transmission cost exceeds the marginal border saving at
  // the lower end. Open: it falls short at the upper end.
  bool closed_condition = false;
  bool open_condition = false;
};

// C(I) = c_T(alpha I) + c_b(I).
double AggregateCost(const CostCurveSet& set, double imports);

// argmin of AggregateCost over [0, i_free].
OptimizationResult MinimizeOverImports(const CostCurveSet& set,
                                       const OptimizerOptions& options = {});

// argmin over F in [0, 1] of c_T(x + alpha I_ik F) + c_b(I_ik F). Throws
// DomainError if I_ik exceeds the border curve's i_free.
OptimizationResult MinimizeOverScreening(const CostCurveSet& set,
                                         double free_imports,
                                         double domestic_cases,
                                         const OptimizerOptions& options = {});

struct PreparednessReport {
  double discount = 0.0;
  // d c_T(alpha I_ik F)/dF and -d c_b(I_ik F)/dF, both at F = 0.
  double marginal_transmission = 0.0;
  double marginal_border_saving = 0.0;
  // marginal_transmission > marginal_border_saving.
  bool standard_condition = false;
  // discount + marginal_transmission > marginal_border_saving: full closure
  // stays optimal when closing refunds `discount` of the baseline c0.
  bool closed_optimal = false;
};

// Requires 0 <= discount <= c0 and I_ik <= i_free.
PreparednessReport BoundaryClosedWithPreparedness(const CostCurveSet& set,
                                                  double free_imports,
                                                  double discount);

struct CostBreakdown {
  double transmission = 0.0;
  double border = 0.0;
  double outbreak = 0.0;
  // transmission + border + outbreak, outbreak taken as realized burden.
  double total = 0.0;
  // transmission + border - outbreak, outbreak read as averted burden.
  double literal_total = 0.0;
};

// Components at domestic cases x and imports I, with c_T and c_O evaluated at
// x + alpha I.
CostBreakdown TotalPolicyCost(const CostCurveSet& set, double domestic_cases,
                              double imports);

}  // namespace policycost

#endif  // POLICYCOST_REGION_OPTIMIZER_H_
