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

#include "policycost/import_model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "policycost/errors.h"
#include "policycost/numeric.h"

namespace policycost {
namespace {

void CheckPrevalence(double prevalence) {
  if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
    throw DomainError("prevalence must lie in [0, 1], got " +
                      std::to_string(prevalence));
  }
}

// Unbiased draw from [0, bound) using rejection on the low residue.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

ImportScenario ImportScenario::FromPrevalence(std::int64_t population,
                                              double prevalence,
                                              std::int64_t travelers) {
  CheckPrevalence(prevalence);
  ImportScenario s{population,
                   static_cast<std::int64_t>(
                       std::llround(prevalence * static_cast<double>(population))),
                   travelers};
  s.Validate();
  return s;
}

void ImportScenario::Validate() const {
  if (population < 1) {
    throw DomainError("population must be at least 1");
  }
  if (infected < 0 || infected > population) {
    throw DomainError("infected count must lie in [0, population]");
  }
  if (travelers < 0 || travelers > population) {
    throw DomainError("traveler count must lie in [0, population]");
  }
}

std::vector<double> HypergeometricDistribution(const ImportScenario& s) {
  s.Validate();
  const std::int64_t n = s.population;
  const std::int64_t infected = s.infected;
  const std::int64_t k = s.travelers;
  const std::int64_t healthy = n - infected;
  const std::int64_t lo = std::max<std::int64_t>(0, k - healthy);
  const std::int64_t hi = std::min(k, infected);

  std::int64_t mode = (k + 1) * (infected + 1) / (n + 2);
  mode = std::clamp(mode, lo, hi);

  // Weights relative to the mode via the pmf ratio recurrence. Every factor is
  // an exact integer below 2^53, so each step rounds once.
  std::vector<double> weights(static_cast<std::size_t>(hi + 1), 0.0);
  weights[mode] = 1.0;
  for (std::int64_t v = mode; v > lo; --v) {
    const double num = static_cast<double>(v) *
                       static_cast<double>(healthy - k + v);
    const double den = static_cast<double>(infected - v + 1) *
                       static_cast<double>(k - v + 1);
    weights[v - 1] = weights[v] * (num / den);
  }
  for (std::int64_t v = mode; v < hi; ++v) {
    const double num = static_cast<double>(infected - v) *
                       static_cast<double>(k - v);
    const double den = static_cast<double>(v + 1) *
                       static_cast<double>(healthy - k + v + 1);
    weights[v + 1] = weights[v] * (num / den);
  }

  CompensatedSum total;
  for (double w : weights) total.Add(w);
  const double norm = total.Value();
  for (double& w : weights) w /= norm;
  return weights;
}

double HypergeometricPmf(const ImportScenario& s, std::int64_t count) {
  if (count < 0) throw DomainError("count must be nonnegative");
  const std::vector<double> pmf = HypergeometricDistribution(s);
  if (count >= static_cast<std::int64_t>(pmf.size())) return 0.0;
  return pmf[count];
}

double ImportTailSum(const ImportScenario& s, std::int64_t n) {
  if (n < 0) throw DomainError("n must be nonnegative");
  const std::vector<double> pmf = HypergeometricDistribution(s);
  const std::int64_t last =
      std::min<std::int64_t>(n, static_cast<std::int64_t>(pmf.size()) - 1);
  CompensatedSum sum;
  for (std::int64_t v = 1; v <= last; ++v) sum.Add(pmf[v]);
  return sum.Value();
}

double ApproxTailSum(std::int64_t travelers, double prevalence,
                     std::int64_t n) {
  CheckPrevalence(prevalence);
  if (travelers < 0) throw DomainError("travelers must be nonnegative");
  if (n < 0 || n > travelers) throw DomainError("n must lie in [0, travelers]");
  CompensatedSum sum;
  double term = 1.0;  // C(k, v) L^v at v = 0
  for (std::int64_t v = 1; v <= n; ++v) {
    term *= prevalence * static_cast<double>(travelers - v + 1) /
            static_cast<double>(v);
    sum.Add(term);
  }
  return sum.Value();
}

double ExpectedImportsClosedForm(std::int64_t travelers, double prevalence) {
  CheckPrevalence(prevalence);
  if (travelers < 0) throw DomainError("travelers must be nonnegative");
  CompensatedSum sum;
  double term = 1.0;
  for (std::int64_t v = 1; v <= travelers && term != 0.0; ++v) {
    term *= prevalence * static_cast<double>(travelers - v + 1) /
            static_cast<double>(v);
    sum.Add(static_cast<double>(v) * term);
  }
  const double value = sum.Value();
  if (!std::isfinite(value)) {
    throw NumericalError("expected imports overflow for k=" +
                         std::to_string(travelers) +
                         ", L=" + std::to_string(prevalence));
  }
  return value;
}

double ExpectedImportsExact(const ImportScenario& s) {
  s.Validate();
  return static_cast<double>(s.travelers) * static_cast<double>(s.infected) /
         static_cast<double>(s.population);
}

double ExpectedImportsMulti(const SourceProfile& profile) {
  CompensatedSum sum;
  for (const SourceRisk& source : profile) {
    CheckPrevalence(source.probability);
    if (source.travelers < 0) {
      throw DomainError("source traveler count must be nonnegative");
    }
    sum.Add(source.probability * static_cast<double>(source.travelers));
  }
  return sum.Value();
}

std::vector<std::int64_t> SampleImports(const ImportScenario& s,
                                        std::uint64_t seed,
                                        std::int64_t trials) {
  s.Validate();
  if (trials < 1) throw DomainError("trials must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> counts;
  counts.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    std::uint64_t remaining = static_cast<std::uint64_t>(s.population);
    std::uint64_t infected_left = static_cast<std::uint64_t>(s.infected);
    std::int64_t hits = 0;
    for (std::int64_t draw = 0; draw < s.travelers; ++draw) {
      if (UniformBelow(rng, remaining) < infected_left) {
        --infected_left;
        ++hits;
      }
      --remaining;
    }
    counts.push_back(hits);
  }
  return counts;
}

}  // namespace policycost
