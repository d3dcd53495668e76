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
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "policycost/errors.h"
#include "policycost/import_model.h"
#include "test_util.h"

namespace policycost {
namespace {

// Counts infected travelers over every size-k subset of a population whose
// first K members are infected. Exponential; N <= 16 only.
std::vector<double> EnumeratePmf(int n, int infected, int k) {
  std::vector<double> counts(k + 1, 0.0);
  double subsets = 0.0;
  const std::uint32_t infected_mask = (1u << infected) - 1u;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    counts[__builtin_popcount(mask & infected_mask)] += 1.0;
    subsets += 1.0;
  }
  for (double& c : counts) c /= subsets;
  return counts;
}

// Binomial coefficient via Pascal's triangle in long double.
long double PascalBinomial(int n, int r) {
  std::vector<long double> row(n + 1, 0.0L);
  row[0] = 1.0L;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  }
  return row[r];
}

TEST_CASE("pmf matches subset enumeration") {
  // Frozen: C(2,1) C(8,2) / C(10,3) = 2 * 28 / 120.
  CHECK(HypergeometricPmf({10, 2, 3}, 1) == doctest::Approx(56.0 / 120.0).epsilon(1e-15));
  const std::vector<double> oracle = EnumeratePmf(10, 2, 3);
  CHECK(oracle[1] == doctest::Approx(56.0 / 120.0).epsilon(1e-15));

  for (int n = 1; n <= 12; ++n) {
    for (int infected = 0; infected <= n; ++infected) {
      for (int k = 0; k <= n; ++k) {
        const std::vector<double> expected = EnumeratePmf(n, infected, k);
        for (int v = 0; v <= k; ++v) {
          CHECK(HypergeometricPmf({n, infected, k}, v) ==
                doctest::Approx(expected[v]).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("pmf edge cases") {
  CHECK(HypergeometricPmf({50, 0, 7}, 0) == 1.0);
  CHECK(HypergeometricPmf({50, 0, 7}, 1) == 0.0);
  CHECK(HypergeometricPmf({10, 2, 3}, 3) == 0.0);
  // Lower support bound: 9 travelers from 10 with 2 infected carry >= 1.
  CHECK(HypergeometricPmf({10, 2, 9}, 0) == 0.0);
  CHECK(HypergeometricPmf({10, 10, 3}, 3) == 1.0);
  CHECK_THROWS_AS(HypergeometricPmf({10, 11, 3}, 0), DomainError);
  CHECK_THROWS_AS(HypergeometricPmf({10, 2, 11}, 0), DomainError);
  CHECK_THROWS_AS(HypergeometricPmf({0, 0, 0}, 0), DomainError);
  CHECK_THROWS_AS(HypergeometricPmf({10, 2, 3}, -1), DomainError);
}

TEST_CASE("pmf normalization and mean at large populations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000000);
    const std::int64_t infected = static_cast<std::int64_t>(rng() % (n + 1));
    const std::int64_t k =
        static_cast<std::int64_t>(rng() % (std::min<std::int64_t>(n, 20000) + 1));
    const std::vector<double> pmf = HypergeometricDistribution({n, infected, k});
    long double total = 0.0L;
    long double mean = 0.0L;
    for (std::size_t v = 0; v < pmf.size(); ++v) {
      total += pmf[v];
      mean += static_cast<long double>(v) * pmf[v];
    }
    const double exact = static_cast<double>(k) * infected / n;
    CHECK(std::abs(static_cast<double>(total) - 1.0) <= 1e-12);
    CHECK(std::abs(static_cast<double>(mean) - exact) <=
          1e-12 * std::max(1.0, exact));
  }
}

TEST_CASE("tail sum starts at one") {
  const ImportScenario s{10, 2, 3};
  CHECK(ImportTailSum(s, 2) == doctest::Approx(1.0 - 56.0 / 120.0).epsilon(1e-14));
  CHECK(ImportTailSum(s, 0) == 0.0);
  CHECK(ImportTailSum({40, 0, 6}, 6) == 0.0);
  // Beyond the support the sum saturates at 1 - pmf(0).
  CHECK(ImportTailSum(s, 50) == doctest::Approx(1.0 - HypergeometricPmf(s, 0)));
  CHECK_THROWS_AS(ImportTailSum(s, -1), DomainError);
}

TEST_CASE("approximate tail sum") {
  CHECK(ApproxTailSum(2, 0.1, 2) == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(ApproxTailSum(9, 0.0, 5) == 0.0);
  CHECK(ApproxTailSum(1, 0.05, 1) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(ApproxTailSum(4, 0.3, 0) == 0.0);
  CHECK_THROWS_AS(ApproxTailSum(3, 1.5, 1), DomainError);
  CHECK_THROWS_AS(ApproxTailSum(3, -0.1, 1), DomainError);
  CHECK_THROWS_AS(ApproxTailSum(3, 0.1, 4), DomainError);
}

// Binomial tail sum_{v=1}^{n} C(k,v) L^v (1-L)^(k-v): the N -> infinity limit
// of the exact tail. The approximate form drops the (1-L)^(k-v) factor.
double BinomialTail(int k, double l, int n) {
  long double total = 0.0L;
  for (int v = 1; v <= n; ++v) {
    total += PascalBinomial(k, v) * std::pow(static_cast<long double>(l), v) *
             std::pow(1.0L - l, k - v);
  }
  return static_cast<double>(total);
}

TEST_CASE("exact tail converges to the binomial limit as N grows") {
  double previous = std::numeric_limits<double>::infinity();
  for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
    const ImportScenario s = ImportScenario::FromPrevalence(n, 0.01, 5);
    const double gap = std::abs(ImportTailSum(s, 2) - BinomialTail(5, 0.01, 2));
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("approximate tail keeps a fixed offset from the exact limit") {
  // The residual gap is the dropped (1-L)^(k-v) factor, about 2e-3 here.
  const double offset = ApproxTailSum(5, 0.01, 2) - BinomialTail(5, 0.01, 2);
  CHECK(offset == doctest::Approx(0.051 - 0.05 * std::pow(0.99, 4) - 0.001 * std::pow(0.99, 3)).epsilon(1e-9));
  const ImportScenario s = ImportScenario::FromPrevalence(1000000, 0.01, 5);
  CHECK(ApproxTailSum(5, 0.01, 2) - ImportTailSum(s, 2) ==
        doctest::Approx(offset).epsilon(1e-3));
  // The offset vanishes as L -> 0 at fixed k.
  double previous = offset;
  for (double l : {1e-3, 1e-4, 1e-5}) {
    const double next = ApproxTailSum(5, l, 2) - BinomialTail(5, l, 2);
    CHECK(next < previous);
    previous = next;
  }
}

TEST_CASE("expected imports follow the closed form") {
  CHECK(ExpectedImportsClosedForm(2, 0.1) == doctest::Approx(0.22).epsilon(1e-15));
  CHECK(ExpectedImportsClosedForm(17, 0.0) == 0.0);
  CHECK(ExpectedImportsClosedForm(1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(ExpectedImportsClosedForm(0, 0.3) == 0.0);
  for (int k = 1; k <= 60; ++k) {
    for (double l : {0.001, 0.01, 0.1, 0.5}) {
      long double direct = 0.0L;
      for (int v = 1; v <= k; ++v) {
        direct += v * PascalBinomial(k, v) * std::pow(static_cast<long double>(l), v);
      }
      const double closed = k * l * std::pow(1.0 + l, k - 1);
      CHECK(testing::RelativelyNear(ExpectedImportsClosedForm(k, l),
                                    static_cast<double>(direct), 1e-12));
      CHECK(testing::RelativelyNear(ExpectedImportsClosedForm(k, l), closed, 1e-12));
    }
  }
  CHECK_THROWS_AS(ExpectedImportsClosedForm(5, 1.1), DomainError);
  CHECK_THROWS_AS(ExpectedImportsClosedForm(200000, 1.0), NumericalError);
}

TEST_CASE("exact and multi-source expectations") {
  CHECK(ExpectedImportsExact({10000, 100, 100}) == doctest::Approx(1.0));
  CHECK(ExpectedImportsExact({500, 0, 20}) == 0.0);
  CHECK(ExpectedImportsExact({10, 2, 3}) == doctest::Approx(0.6));
  CHECK(ExpectedImportsMulti({{0.01, 100}, {0.001, 1000}}) == doctest::Approx(2.0));
  CHECK(ExpectedImportsMulti({}) == 0.0);
  CHECK(ExpectedImportsMulti({{0.5, 2}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ExpectedImportsMulti({{1.5, 2}}), DomainError);
  CHECK_THROWS_AS(ExpectedImportsMulti({{0.5, -2}}), DomainError);
}

TEST_CASE("prevalence rounds to a whole infected count") {
  CHECK(ImportScenario::FromPrevalence(10, 0.2, 3) == ImportScenario{10, 2, 3});
  CHECK(ImportScenario::FromPrevalence(1000, 0.0125, 3).infected == 13);
  CHECK_THROWS_AS(ImportScenario::FromPrevalence(10, 1.2, 3), DomainError);
}

TEST_CASE("sampler degenerate scenarios") {
  for (std::int64_t d : SampleImports({100, 0, 30}, 5, 1000)) CHECK(d == 0);
  for (std::int64_t d : SampleImports({10, 10, 3}, 9, 1000)) CHECK(d == 3);
  CHECK_THROWS_AS(SampleImports({10, 2, 3}, 1, 0), DomainError);
  CHECK_THROWS_AS(SampleImports({10, 20, 3}, 1, 10), DomainError);
}

TEST_CASE("sampler is seeded and matches the exact distribution") {
  const ImportScenario s{10, 2, 3};
  const std::vector<std::int64_t> a = SampleImports(s, 42, 100000);
  CHECK(a == SampleImports(s, 42, 100000));
  CHECK(a != SampleImports(s, 43, 100000));

  const double trials = static_cast<double>(a.size());
  const double mean = std::accumulate(a.begin(), a.end(), 0.0) / trials;
  double var = 0.0;
  for (std::int64_t d : a) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / (trials - 1.0));
  CHECK(std::abs(mean - 0.6) <= 3.0 * sd / std::sqrt(trials));

  const std::vector<double> pmf = HypergeometricDistribution(s);
  std::vector<double> counts(4, 0.0);
  for (std::int64_t d : a) counts[d] += 1.0;
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    const double se = std::sqrt(pmf[v] * (1.0 - pmf[v]) / trials);
    CHECK(std::abs(counts[v] / trials - pmf[v]) <= 4.0 * se);
  }
}

}  // namespace
}  // namespace policycost
