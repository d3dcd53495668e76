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

// Probability models for the number of infectious travelers moving between
// regions. Travelers are a uniformly random subset of the origin population,
// so the exact count is hypergeometric. The large-population limit form and
// the expected-imports sum are exposed exactly as written in the model, even
// where they are not normalized distributions.

#ifndef POLICYCOST_IMPORT_MODEL_H_
#define POLICYCOST_IMPORT_MODEL_H_

#include <cstdint>
#include <utility>
#include <vector>

namespace policycost {

struct ImportScenario {
  std::int64_t population = 1;  // N
  std::int64_t infected = 0;    // K
  std::int64_t travelers = 0;   // k

  // Builds a scenario with K = round(prevalence * population).
  static ImportScenario FromPrevalence(std::int64_t population,
                                       double prevalence,
                                       std::int64_t travelers);

  // Throws DomainError unless N >= 1, 0 <= K <= N and 0 <= k <= N.
  void Validate() const;

  bool operator==(const ImportScenario&) const = default;
};

struct SourceRisk {
  double probability = 0.0;    // p_R
  std::int64_t travelers = 0;  // k_R
};
using SourceProfile = std::vector<SourceRisk>;

// Full hypergeometric distribution, indexed by count 0..min(k, K).
// Entries below the support lower bound are exactly zero.
std::vector<double> HypergeometricDistribution(const ImportScenario& s);

// P(exactly `count` infected among the travelers).
double HypergeometricPmf(const ImportScenario& s, std::int64_t count);

// Sum of the pmf over counts 1..n. n = 0 gives the empty sum.
double ImportTailSum(const ImportScenario& s, std::int64_t n);

// Sum over counts 1..n of C(k, count) * L^count (the k << N L << N limit).
// Requires 0 <= L <= 1 and 0 <= n <= k.
double ApproxTailSum(std::int64_t travelers, double prevalence,
                     std::int64_t n);

// I_ik = sum over counts 1..k of count * C(k, count) * L^count, which equals
// k L (1 + L)^(k - 1). Throws NumericalError if the sum overflows.
double ExpectedImportsClosedForm(std::int64_t travelers, double prevalence);

// Hypergeometric mean k K / N.
double ExpectedImportsExact(const ImportScenario& s);

// Sum of p_R * k_R over all sources.
double ExpectedImportsMulti(const SourceProfile& profile);

// Draws `trials` independent samples of the infected-traveler count by
// sequential sampling without replacement. Same seed, same output.
std::vector<std::int64_t> SampleImports(const ImportScenario& s,
                                        std::uint64_t seed,
                                        std::int64_t trials);

}  // namespace policycost

#endif  // POLICYCOST_IMPORT_MODEL_H_
