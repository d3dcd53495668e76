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

#include "policycost/region_optimizer.h"

#include <cmath>
#include <sstream>

#include "policycost/errors.h"
#include "policycost/scalar_minimizer.h"

namespace policycost {
namespace {

OptimizationResult Classify(const ScalarMinimum& m, double lo, double hi,
                            const ScalarObjective& objective,
                            const OptimizerOptions& options) {
  OptimizationResult result;
  result.argument = m.argument;
  result.cost = m.value;
  result.derivative_at_closed = objective.derivative(lo, Side::kRight);
  result.derivative_at_open = objective.derivative(hi, Side::kLeft);
  result.closed_condition = result.derivative_at_closed > 0.0;
  result.open_condition = result.derivative_at_open < 0.0;
  if (m.at_lower) {
    result.classification = Classification::kBoundaryClosed;
    result.foc_residual = result.derivative_at_closed;
  } else if (m.at_upper) {
    result.classification = Classification::kBoundaryOpen;
    result.foc_residual = result.derivative_at_open;
  } else {
    result.classification = Classification::kInterior;
    const double left = m.left_derivative;
    const double right = m.right_derivative;
    if (left <= 0.0 && right >= 0.0) {
      result.foc_residual = 0.0;
    } else {
      result.foc_residual = std::min(std::abs(left), std::abs(right));
    }
    if (!(result.foc_residual <= options.foc_tolerance)) {
      std::ostringstream msg;
      msg << "interior optimum at " << m.argument
          << " violates the first-order condition (residual "
          << result.foc_residual << ")";
      throw InvariantViolation(msg.str());
    }
  }
  return result;
}

ScalarMinimizerOptions ToScalarOptions(const OptimizerOptions& options) {
  ScalarMinimizerOptions scalar;
  scalar.grid_points = options.grid_points;
  scalar.relative_width = options.relative_width;
  return scalar;
}

}  // namespace

std::string_view ToString(Classification c) {
  switch (c) {
    case Classification::kInterior:
      return "interior";
    case Classification::kBoundaryClosed:
      return "boundary-closed";
    case Classification::kBoundaryOpen:
      return "boundary-open";
  }
  return "unknown";
}

double AggregateCost(const CostCurveSet& set, double imports) {
  return set.transmission.Eval(set.alpha * imports) + set.border.Eval(imports);
}

OptimizationResult MinimizeOverImports(const CostCurveSet& set,
                                       const OptimizerOptions& options) {
  ScalarObjective objective;
  objective.value = [&](double i) { return AggregateCost(set, i); };
  objective.derivative = [&](double i, Side side) {
    return set.alpha * set.transmission.Derivative(set.alpha * i, side) +
           set.border.Derivative(i);
  };
  if (set.transmission.HasBreakdown()) {
    objective.kinks.push_back(set.transmission.x_tti / set.alpha);
  }
  const double hi = set.border.i_free;
  const ScalarMinimum m =
      MinimizeBounded(objective, 0.0, hi, ToScalarOptions(options));
  return Classify(m, 0.0, hi, objective, options);
}

OptimizationResult MinimizeOverScreening(const CostCurveSet& set,
                                         double free_imports,
                                         double domestic_cases,
                                         const OptimizerOptions& options) {
  if (!(free_imports >= 0.0)) {
    throw DomainError("inbound imports must be nonnegative");
  }
  if (!(domestic_cases >= 0.0)) {
    throw DomainError("domestic cases must be nonnegative");
  }
  if (free_imports > set.border.i_free) {
    std::ostringstream msg;
    msg << "inbound imports " << free_imports
        << " exceed the border-cost domain [0, " << set.border.i_free << "]";
    throw DomainError(msg.str());
  }
  const double scale = set.alpha * free_imports;
  ScalarObjective objective;
  objective.value = [&](double f) {
    return set.transmission.Eval(domestic_cases + scale * f) +
           set.border.Eval(free_imports * f);
  };
  objective.derivative = [&](double f, Side side) {
    return scale * set.transmission.Derivative(domestic_cases + scale * f,
                                               side) +
           free_imports * set.border.Derivative(free_imports * f);
  };
  if (set.transmission.HasBreakdown() && scale > 0.0) {
    const double kink = (set.transmission.x_tti - domestic_cases) / scale;
    if (kink > 0.0 && kink < 1.0) objective.kinks.push_back(kink);
  }
  if (set.transmission.HasBreakdown() && scale == 0.0 &&
      domestic_cases == set.transmission.x_tti) {
    // Objective is constant; derivative is zero from both sides.
    objective.derivative = [](double, Side) { return 0.0; };
  }
  const ScalarMinimum m =
      MinimizeBounded(objective, 0.0, 1.0, ToScalarOptions(options));
  return Classify(m, 0.0, 1.0, objective, options);
}

PreparednessReport BoundaryClosedWithPreparedness(const CostCurveSet& set,
                                                  double free_imports,
                                                  double discount) {
  if (!(discount >= 0.0 && discount <= set.transmission.c0)) {
    throw DomainError("preparedness discount must lie in [0, c0]");
  }
  if (!(free_imports >= 0.0 && free_imports <= set.border.i_free)) {
    throw DomainError("inbound imports outside the border-cost domain");
  }
  PreparednessReport report;
  report.discount = discount;
  report.marginal_transmission =
      set.alpha * free_imports *
      set.transmission.Derivative(0.0, Side::kRight);
  report.marginal_border_saving =
      -free_imports * set.border.Derivative(0.0);
  report.standard_condition =
      report.marginal_transmission > report.marginal_border_saving;
  report.closed_optimal = discount + report.marginal_transmission >
                          report.marginal_border_saving;
  return report;
}

CostBreakdown TotalPolicyCost(const CostCurveSet& set, double domestic_cases,
                              double imports) {
  if (!(domestic_cases >= 0.0)) {
    throw DomainError("domestic cases must be nonnegative");
  }
  const double effective = domestic_cases + set.alpha * imports;
  CostBreakdown out;
  out.transmission = set.transmission.Eval(effective);
  out.border = set.border.Eval(imports);
  out.outbreak = set.outbreak.Eval(effective);
  out.total = out.transmission + out.border + out.outbreak;
  out.literal_total = out.transmission + out.border - out.outbreak;
  return out;
}

}  // namespace policycost
