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

#ifndef HDRIQA_OPTIMIZE_HPP_
#define HDRIQA_OPTIMIZE_HPP_

#include <functional>
#include <vector>

namespace hdriqa {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free 1-D maximization on [lo, hi]. Assumes unimodality for
/// convergence but always returns the best point actually evaluated.
/// Non-finite objective values raise NumericalError naming the point.
GoldenResult golden_section_maximize(const std::function<double(double)>& f,
                                     double lo, double hi, double tol,
                                     int max_evals);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill-simplex minimization. The initial simplex is x0 plus one
/// vertex per coordinate offset by steps[i]. Stops when the value spread
/// across the simplex drops below ftol or after max_iters iterations.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& steps, int max_iters,
    double ftol);

}  // namespace hdriqa

#endif  // HDRIQA_OPTIMIZE_HPP_
