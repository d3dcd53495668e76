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

#include "policycost/game_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "policycost/errors.h"
#include "policycost/import_model.h"
#include "policycost/scalar_minimizer.h"

namespace policycost {
namespace {

double UnrestrictedImports(const TravelLink& link, double origin_prevalence) {
  return ExpectedImportsClosedForm(link.travelers, origin_prevalence);
}

PolicyDecision Evaluate(const RegionState& region, double free_imports,
                        double domestic_cases, double screening) {
  PolicyDecision d;
  d.domestic_cases = domestic_cases;
  d.screening = screening;
  d.imports = free_imports * screening;
  const double effective = domestic_cases + region.curves.alpha * d.imports;
  d.policy_cost =
      ResponderPolicyCost(region, free_imports, domestic_cases, screening);
  d.total_cost = d.policy_cost + region.curves.outbreak.Eval(effective);
  return d;
}

// Steady-state prevalence when the region holds `cases` new cases per day
// and prevalence scales with that level.
double CooperativePrevalence(const RegionState& region, double cases) {
  if (region.domestic_cases <= 0.0) return 0.0;
  return std::min(1.0, region.prevalence * cases / region.domestic_cases);
}

std::vector<double> Linspace(double lo, double hi, int n) {
  if (hi <= lo || n < 2) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace

void GameState::Validate() const {
  for (int r = 0; r < 2; ++r) {
    const RegionState& region = regions[r];
    if (region.population < 1) {
      throw DomainError("region " + region.id + ": population must be >= 1");
    }
    if (!(region.prevalence >= 0.0 && region.prevalence <= 1.0)) {
      throw DomainError("region " + region.id +
                        ": prevalence must lie in [0, 1]");
    }
    if (!(region.domestic_cases >= 0.0)) {
      throw DomainError("region " + region.id +
                        ": domestic cases must be nonnegative");
    }
    const TravelLink& link = inbound[r];
    if (link.destination != region.id || link.origin != regions[1 - r].id) {
      throw DomainError("inbound link " + link.origin + "->" +
                        link.destination + " does not connect " +
                        regions[1 - r].id + "->" + region.id);
    }
    if (link.travelers < 0) {
      throw DomainError("link travelers must be nonnegative");
    }
    if (!(link.screening >= 0.0 && link.screening <= 1.0)) {
      throw DomainError("link screening must lie in [0, 1]");
    }
  }
  if (regions[0].id == regions[1].id) {
    throw DomainError("region ids must differ");
  }
}

double ImportsBetween(const RegionState& origin, const TravelLink& link) {
  if (!(link.screening >= 0.0 && link.screening <= 1.0)) {
    throw DomainError("link screening must lie in [0, 1]");
  }
  return UnrestrictedImports(link, origin.prevalence) * link.screening;
}

double ResponderPolicyCost(const RegionState& responder, double free_imports,
                           double domestic_cases, double screening) {
  const CostCurveSet& c = responder.curves;
  return c.transmission.Eval(domestic_cases +
                             c.alpha * free_imports * screening) +
         c.border.EvalScreening(screening);
}

PolicyDecision BestResponse(const RegionState& responder,
                            const RegionState& opponent,
                            const TravelLink& link,
                            const GameOptions& options) {
  const double free_imports = UnrestrictedImports(link, opponent.prevalence);
  if (free_imports == 0.0) {
    PolicyDecision open = Evaluate(responder, 0.0, 0.0, 1.0);
    open.classification = Classification::kBoundaryOpen;
    return open;
  }
  CostCurveSet rebound = responder.curves;
  rebound.border.i_free = free_imports;

  double cases = 0.0;
  OptimizationResult screening =
      MinimizeOverScreening(rebound, free_imports, cases, options.optimizer);
  if (options.joint_best_response && responder.domestic_cases > 0.0) {
    for (int round = 0; round < 20; ++round) {
      ScalarObjective over_cases;
      const double f = screening.argument;
      over_cases.value = [&](double x) {
        return ResponderPolicyCost(responder, free_imports, x, f);
      };
      ScalarMinimizerOptions scalar;
      scalar.grid_points = 201;
      const double next_cases =
          MinimizeBounded(over_cases, 0.0, responder.domestic_cases, scalar)
              .argument;
      const OptimizationResult next = MinimizeOverScreening(
          rebound, free_imports, next_cases, options.optimizer);
      const bool stable = next_cases == cases &&
                          next.argument == screening.argument;
      cases = next_cases;
      screening = next;
      if (stable) break;
    }
  }
  PolicyDecision d =
      Evaluate(responder, free_imports, cases, screening.argument);
  d.classification = screening.classification;
  return d;
}

GameOutcome NashIterate(const GameState& initial, const GameOptions& options) {
  initial.Validate();
  if (options.max_iterations < 1) {
    throw DomainError("max_iterations must be at least 1");
  }
  if (!(options.tolerance > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
  const std::array<RegionState, 2>& regions = initial.regions;

  GameOutcome out;
  out.state = initial;
  std::array<double, 2> free_imports{};
  for (int r = 0; r < 2; ++r) {
    free_imports[r] =
        UnrestrictedImports(initial.inbound[r], regions[1 - r].prevalence);
    out.decisions[r] =
        Evaluate(regions[r], free_imports[r], 0.0, initial.inbound[r].screening);
  }

  std::vector<double> moves;
  for (int it = 1; it <= options.max_iterations; ++it) {
    double move = 0.0;
    for (int r = 0; r < 2; ++r) {
      const PolicyDecision br = BestResponse(regions[r], regions[1 - r],
                                             initial.inbound[r], options);
      PolicyDecision& d = out.decisions[r];
      double x = br.domestic_cases;
      double f = br.screening;
      if (out.damped) {
        x = d.domestic_cases + options.damping * (x - d.domestic_cases);
        f = d.screening + options.damping * (f - d.screening);
      }
      move = std::max({move, std::abs(x - d.domestic_cases),
                       std::abs(f - d.screening)});
      d = Evaluate(regions[r], free_imports[r], x, f);
      d.classification = br.classification;
    }
    moves.push_back(move);
    out.iterations = it;
    if (move < options.tolerance) {
      out.converged = true;
      break;
    }
    const std::size_t n = moves.size();
    if (!out.damped && n >= 3 && moves[n - 1] > moves[n - 2] &&
        moves[n - 2] > moves[n - 3]) {
      out.damped = true;
    }
  }
  out.total_cost = out.decisions[0].total_cost + out.decisions[1].total_cost;
  return out;
}

GameOutcome CooperativeOptimum(const GameState& state,
                               const GameOptions& options) {
  state.Validate();
  const std::array<RegionState, 2>& regions = state.regions;
  const int n = std::max(options.cooperative_grid_points, 2);

  // Decision vector: x0, F0, x1, F1.
  auto free_imports = [&](int r, double origin_cases) {
    const RegionState& origin = regions[1 - r];
    return UnrestrictedImports(state.inbound[r],
                               CooperativePrevalence(origin, origin_cases));
  };
  auto region_cost = [&](int r, double cases, double screening,
                         double imports) {
    return Evaluate(regions[r], imports, cases, screening).total_cost;
  };
  auto joint_cost = [&](const std::array<double, 4>& v) {
    return region_cost(0, v[0], v[1], free_imports(0, v[2])) +
           region_cost(1, v[2], v[3], free_imports(1, v[0]));
  };

  const std::vector<double> xs0 = Linspace(0.0, regions[0].domestic_cases, n);
  const std::vector<double> xs1 = Linspace(0.0, regions[1].domestic_cases, n);
  const std::vector<double> fs = Linspace(0.0, 1.0, n);
  std::vector<double> imports0(xs1.size());
  std::vector<double> imports1(xs0.size());
  for (std::size_t i = 0; i < xs1.size(); ++i) imports0[i] = free_imports(0, xs1[i]);
  for (std::size_t i = 0; i < xs0.size(); ++i) imports1[i] = free_imports(1, xs0[i]);

  std::array<double, 4> best{};
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < xs0.size(); ++a) {
    for (std::size_t b = 0; b < xs1.size(); ++b) {
      for (double f0 : fs) {
        const double c0 = region_cost(0, xs0[a], f0, imports0[b]);
        for (double f1 : fs) {
          const double total = c0 + region_cost(1, xs1[b], f1, imports1[a]);
          if (total < best_cost) {
            best_cost = total;
            best = {xs0[a], f0, xs1[b], f1};
          }
        }
      }
    }
  }

  const std::array<double, 4> upper = {regions[0].domestic_cases, 1.0,
                                       regions[1].domestic_cases, 1.0};
  ScalarMinimizerOptions scalar;
  scalar.grid_points = 201;
  scalar.relative_width = 1e-10;
  int sweeps = 0;
  for (; sweeps < options.coordinate_descent_sweeps; ++sweeps) {
    bool improved = false;
    for (int c = 0; c < 4; ++c) {
      if (upper[c] <= 0.0) continue;
      ScalarObjective line;
      line.value = [&](double t) {
        std::array<double, 4> v = best;
        v[c] = t;
        return joint_cost(v);
      };
      const ScalarMinimum m = MinimizeBounded(line, 0.0, upper[c], scalar);
      if (m.value < best_cost - 1e-15 * std::max(1.0, std::abs(best_cost))) {
        best[c] = m.argument;
        best_cost = m.value;
        improved = true;
      }
    }
    if (!improved) break;
  }

  GameOutcome out;
  out.state = state;
  out.converged = true;
  out.iterations = sweeps + 1;
  const std::array<double, 2> imports = {free_imports(0, best[2]),
                                         free_imports(1, best[0])};
  for (int r = 0; r < 2; ++r) {
    out.decisions[r] =
        Evaluate(regions[r], imports[r], best[2 * r], best[2 * r + 1]);
    out.decisions[r].classification =
        best[2 * r + 1] == 0.0   ? Classification::kBoundaryClosed
        : best[2 * r + 1] == 1.0 ? Classification::kBoundaryOpen
                                 : Classification::kInterior;
  }
  out.total_cost = out.decisions[0].total_cost + out.decisions[1].total_cost;
  out.open_borders_verified =
      CooperativePrevalence(regions[0], best[0]) == 0.0 &&
      CooperativePrevalence(regions[1], best[2]) == 0.0 && best[1] == 1.0 &&
      best[3] == 1.0;
  return out;
}

NoncooperationPrice PriceOfNoncooperation(const GameOutcome& nash,
                                          const GameOutcome& cooperative,
                                          double tolerance) {
  if (!(nash.state == cooperative.state)) {
    throw DomainError("Nash and cooperative outcomes come from different states");
  }
  NoncooperationPrice price;
  price.gap = nash.total_cost - cooperative.total_cost;
  if (price.gap < -tolerance) {
    throw InvariantViolation("cooperative total exceeds Nash total");
  }
  if (cooperative.total_cost > 0.0) {
    price.ratio = nash.total_cost / cooperative.total_cost;
  } else {
    price.ratio = nash.total_cost == 0.0
                      ? 1.0
                      : std::numeric_limits<double>::infinity();
  }
  return price;
}

GameSolution SolveGame(const GameState& state, const GameOptions& options) {
  GameSolution solution;
  solution.nash = NashIterate(state, options);
  solution.cooperative = CooperativeOptimum(state, options);
  solution.price = PriceOfNoncooperation(solution.nash, solution.cooperative);
  return solution;
}

}  // namespace policycost
