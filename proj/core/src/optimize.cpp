// Copyright 2026 The hdriqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hdriqa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hdriqa/errors.hpp"

namespace hdriqa {

namespace {

double checked_eval(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericalError("non-finite objective value at x = " +
                         std::to_string(x));
  }
  return v;
}

}  // namespace

GoldenResult golden_section_maximize(const std::function<double(double)>& f,
                                     double lo, double hi, double tol,
                                     int max_evals) {
  if (!(lo <= hi)) {
    throw ArgumentError("golden-section bracket is inverted");
  }
  if (!(tol > 0.0)) {
    throw ArgumentError("golden-section tolerance must be positive");
  }
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

  GoldenResult best;
  auto eval = [&](double x) {
    const double v = checked_eval(f, x);
    ++best.evaluations;
    if (best.evaluations == 1 || v > best.value) {
      best.x = x;
      best.value = v;
    }
    return v;
  };

  double a = lo;
  double b = hi;
  if (hi - lo <= tol || max_evals < 2) {
    eval(0.5 * (a + b));
    return best;
  }

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol && best.evaluations < max_evals) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& steps, int max_iters,
    double ftol) {
  const std::size_t n = x0.size();
  if (n == 0 || steps.size() != n) {
    throw ArgumentError("nelder-mead requires matching start and step sizes");
  }

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += (steps[i] != 0.0) ? steps[i] : 1e-3;
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
  }

  std::vector<std::size_t> order(n + 1);
  NelderMeadResult result;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];
    if (std::fabs(values[worst] - values[best]) <= ftol) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) {
        centroid[j] += simplex[i][j];
      }
    }
    for (double& c : centroid) {
      c /= static_cast<double>(n);
    }

    auto point_along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
      }
      return p;
    };

    const auto reflected = point_along(kReflect);
    const double f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      const auto expanded = point_along(kExpand);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < values[worst];
      const auto contracted = point_along(outside ? kContract : -kContract);
      const double f_contracted = f(contracted);
      if (f_contracted < (outside ? f_reflected : values[worst])) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] =
                simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
          }
          values[i] = f(simplex[i]);
        }
      }
    }
  }

  const std::size_t best_index = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best_index];
  result.value = values[best_index];
  result.iterations = iter;
  return result;
}

}  // namespace hdriqa
