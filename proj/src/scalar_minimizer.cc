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

#include "policycost/scalar_minimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "policycost/errors.h"

namespace policycost {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr int kMaxBisections = 200;

struct Candidate {
  double x;
  double f;
};

double CheckedValue(const ScalarObjective& objective, double x, int* count) {
  ++*count;
  const double f = objective.value(x);
  if (!std::isfinite(f)) {
    std::ostringstream msg;
    msg << "objective is not finite at " << x;
    throw NumericalError(msg.str());
  }
  return f;
}

bool KinkInside(const std::vector<double>& kinks, double a, double b) {
  for (double k : kinks) {
    if (k >= a && k <= b) return true;
  }
  return false;
}

// Bisection on the derivative inside [a, b], assuming f'(a) < 0 < f'(b).
double PolishRoot(const ScalarObjective& objective, double a, double b) {
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (objective.derivative(mid, Side::kRight) < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::pair<double, double> GoldenSectionBracket(
    const std::function<double(double)>& f, double lo, double hi,
    double width) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    // Ties shrink toward the lower end.
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (!(c > a && d < b)) break;  // bracket at floating-point resolution
  }
  return {a, b};
}

ScalarMinimum MinimizeBounded(const ScalarObjective& objective, double lo,
                              double hi,
                              const ScalarMinimizerOptions& options) {
  if (!(lo <= hi)) throw DomainError("empty search interval");
  int evaluations = 0;
  std::vector<Candidate> candidates;

  if (hi > lo) {
    const int n = std::max(options.grid_points, 3);
    std::vector<double> xs(n);
    std::vector<double> fs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    xs.back() = hi;
    for (int i = 0; i < n; ++i) {
      fs[i] = CheckedValue(objective, xs[i], &evaluations);
    }

    std::vector<int> basins;
    for (int i = 0; i < n; ++i) {
      const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
      const bool right_ok = i == n - 1 || fs[i] <= fs[i + 1];
      if (left_ok && right_ok) basins.push_back(i);
    }
    std::stable_sort(basins.begin(), basins.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
    if (static_cast<int>(basins.size()) > options.max_refined_basins) {
      basins.resize(options.max_refined_basins);
    }

    const double width = options.relative_width * (hi - lo);
    auto f = [&](double x) { return CheckedValue(objective, x, &evaluations); };
    for (int i : basins) {
      candidates.push_back({xs[i], fs[i]});
      const double a0 = xs[std::max(i - 1, 0)];
      const double b0 = xs[std::min(i + 1, n - 1)];
      auto [a, b] = GoldenSectionBracket(f, a0, b0, width);
      double x = 0.5 * (a + b);
      if (objective.derivative && !KinkInside(objective.kinks, a, b) &&
          objective.derivative(a, Side::kRight) < 0.0 &&
          objective.derivative(b, Side::kLeft) > 0.0) {
        x = PolishRoot(objective, a, b);
      }
      candidates.push_back({x, f(x)});
    }
  }

  candidates.push_back({lo, CheckedValue(objective, lo, &evaluations)});
  candidates.push_back({hi, CheckedValue(objective, hi, &evaluations)});
  for (double k : objective.kinks) {
    if (k > lo && k < hi) {
      candidates.push_back({k, CheckedValue(objective, k, &evaluations)});
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const Candidate& c : candidates) best = std::min(best, c.f);
  const double tie = options.tie_tolerance * std::max(1.0, std::abs(best));
  const Candidate* chosen = nullptr;
  for (const Candidate& c : candidates) {
    if (c.f <= best + tie && (chosen == nullptr || c.x < chosen->x)) {
      chosen = &c;
    }
  }

  ScalarMinimum result;
  result.argument = chosen->x;
  result.value = chosen->f;
  result.at_lower = chosen->x == lo;
  result.at_upper = chosen->x == hi;
  result.at_kink = std::find(objective.kinks.begin(), objective.kinks.end(),
                             chosen->x) != objective.kinks.end();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.left_derivative = nan;
  result.right_derivative = nan;
  if (objective.derivative) {
    if (chosen->x > lo) {
      result.left_derivative = objective.derivative(chosen->x, Side::kLeft);
    }
    if (chosen->x < hi) {
      result.right_derivative = objective.derivative(chosen->x, Side::kRight);
    }
  }
  result.evaluations = evaluations;
  return result;
}

}  // namespace policycost
