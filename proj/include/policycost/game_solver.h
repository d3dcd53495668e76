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

// Two-region policy game.
//
// Each region controls its domestic case level x and the screening factor F
// on its inbound link. Border cost on a link is measured against that link's
// unrestricted import flow, so c_b(I_ik) = 0 when the border is fully open.
//
// Nash play: prevalences are exogenous and each region best-responds to the
// imports it expects. Cooperative play: the regions minimize their summed
// cost as one, and each origin's steady-state prevalence follows its chosen
// domestic case level.

#ifndef POLICYCOST_GAME_SOLVER_H_
#define POLICYCOST_GAME_SOLVER_H_

#include <array>
#include <cstdint>
#include <string>

#include "policycost/cost_models.h"
#include "policycost/region_optimizer.h"

namespace policycost {

struct RegionState {
  std::string id;
  std::int64_t population = 1;
  double prevalence = 0.0;      // L
  double domestic_cases = 0.0;  // x, cases/day
  CostCurveSet curves;

  bool operator==(const RegionState&) const = default;
};

struct TravelLink {
  std::string origin;
  std::string destination;
  std::int64_t travelers = 0;  // k, persons/day
  double screening = 1.0;      // F

  bool operator==(const TravelLink&) const = default;
};

// inbound[r] carries travelers from regions[1 - r] into regions[r].
struct GameState {
  std::array<RegionState, 2> regions;
  std::array<TravelLink, 2> inbound;

  // Throws DomainError on out-of-range fields or mismatched link endpoints.
  void Validate() const;

  bool operator==(const GameState&) const = default;
};

struct PolicyDecision {
  double domestic_cases = 0.0;
  double screening = 1.0;
  double imports = 0.0;      // arriving cases/day, I_ik F
  double policy_cost = 0.0;  // c_T + c_b, what a best response minimizes
  double total_cost = 0.0;   // c_T + c_b + c_O
  Classification classification = Classification::kBoundaryOpen;
};

struct GameOptions {
  int max_iterations = 100;
  double tolerance = 1e-9;
  // Applied once two successive sup-norm moves increase.
  double damping = 0.5;
  // Best-respond over (x, F) instead of F with x pinned to zero.
  bool joint_best_response = false;
  OptimizerOptions optimizer;
  int cooperative_grid_points = 21;
  int coordinate_descent_sweeps = 50;
};

struct GameOutcome {
  GameState state;
  std::array<PolicyDecision, 2> decisions;
  double total_cost = 0.0;
  bool converged = false;
  int iterations = 0;
  bool damped = false;
  // Cooperative only: both steady-state prevalences are zero and both
  // borders ended fully open.
  bool open_borders_verified = false;
};

struct NoncooperationPrice {
  double gap = 0.0;    // Nash total - cooperative total
  double ratio = 1.0;  // Nash total / cooperative total
};

struct GameSolution {
  GameOutcome nash;
  GameOutcome cooperative;
  NoncooperationPrice price;
};

// Expected daily arrivals on `link` from `origin`: I_ik F.
double ImportsBetween(const RegionState& origin, const TravelLink& link);

// c_T(x + alpha I F) + c_b-on-link(F) for a responder facing unrestricted
// inbound flow I.
double ResponderPolicyCost(const RegionState& responder, double free_imports,
                           double domestic_cases, double screening);

PolicyDecision BestResponse(const RegionState& responder,
                            const RegionState& opponent,
                            const TravelLink& link,
                            const GameOptions& options = {});

GameOutcome NashIterate(const GameState& initial,
                        const GameOptions& options = {});

GameOutcome CooperativeOptimum(const GameState& state,
                               const GameOptions& options = {});

// Throws DomainError if the outcomes come from different states and
// InvariantViolation if cooperation is worse beyond `tolerance`.
NoncooperationPrice PriceOfNoncooperation(const GameOutcome& nash,
                                          const GameOutcome& cooperative,
                                          double tolerance = 1e-9);

GameSolution SolveGame(const GameState& state, const GameOptions& options = {});

}  // namespace policycost

#endif  // POLICYCOST_GAME_SOLVER_H_
