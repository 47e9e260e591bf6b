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

#include "hdriqa/display.hpp"

#include <algorithm>
#include <cmath>

#include "hdriqa/errors.hpp"

namespace hdriqa {

namespace {

// Guards log2 against zero after percentile estimation.
constexpr double kLuminanceFloor = 9.313225746154785e-10;  // 2^-30

double sorted_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) {
    return sorted.back();
  }
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double DisplayModel::window_size_stops() const { return std::log2(l_max / l_min); }

void DisplayModel::validate() const {
  if (!(gamma > 0.0)) {
    throw ArgumentError("display gamma must be positive");
  }
  if (!(black_level > 0.0 && black_level < 1.0)) {
    throw ArgumentError("display black level must lie in (0, 1)");
  }
  if (!(l_min > 0.0 && l_min < l_max)) {
    throw ArgumentError("display luminance bounds require 0 < l_min < l_max");
  }
}

LdrImage inverse_display(const HdrImage& h, double exposure_gain,
                         const DisplayModel& model) {
  model.validate();
  if (!(exposure_gain > 0.0) || !std::isfinite(exposure_gain)) {
    throw ArgumentError("exposure gain must be positive and finite");
  }
  const double b = model.black_level;
  const double inv_gamma = 1.0 / model.gamma;
  LdrImage out(h.width(), h.height());
  const std::size_t n = h.data().size();
  for (std::size_t i = 0; i < n; ++i) {
    double t = (h.data()[i] * exposure_gain - b) / (1.0 - b);
    t = std::clamp(t, 0.0, 1.0);
    out.data()[i] = std::pow(t, inv_gamma);
  }
  return out;
}

HdrImage forward_display(const LdrImage& p, const DisplayModel& model) {
  model.validate();
  const double b = model.black_level;
  HdrImage out(p.width(), p.height());
  const std::size_t n = p.data().size();
  for (std::size_t i = 0; i < n; ++i) {
    out.data()[i] = model.l_max * ((1.0 - b) * std::pow(p.data()[i], model.gamma) + b);
  }
  return out;
}

WindowPlan plan_windows(const HdrImage& h, const DisplayModel& model) {
  model.validate();
  std::vector<double> lum;
  lum.reserve(h.pixel_count());
  for (int y = 0; y < h.height(); ++y) {
    for (int x = 0; x < h.width(); ++x) {
      const double v = h.luminance(x, y);
      if (v > 0.0) {
        lum.push_back(v);
      }
    }
  }
  if (lum.empty()) {
    throw DegenerateInputError(
        "cannot place exposure windows: image has no positive luminance");
  }
  std::sort(lum.begin(), lum.end());

  WindowPlan plan;
  plan.source_width = h.width();
  plan.source_height = h.height();
  plan.l0 = std::log2(std::max(sorted_quantile(lum, 0.001), kLuminanceFloor));
  plan.l1 = std::log2(std::max(sorted_quantile(lum, 0.999), kLuminanceFloor));

  const int count =
      std::max(1, static_cast<int>(std::ceil(3.0 * (plan.l1 - plan.l0) / 8.0)));
  plan.endpoints.reserve(count);
  plan.exposures.reserve(count);
  for (int k = 1; k <= count; ++k) {
    const double endpoint = plan.l0 + kWindowSpacingStops * k;
    plan.endpoints.push_back(endpoint);
    plan.exposures.push_back(std::exp2(-endpoint));
  }
  return plan;
}

ExposureStack decompose(const HdrImage& h, const WindowPlan& plan,
                        const DisplayModel& model) {
  if (plan.source_width != h.width() || plan.source_height != h.height()) {
    throw ArgumentError("window plan was built for different image dimensions");
  }
  if (plan.count() < 1) {
    throw ArgumentError("window plan is empty");
  }
  ExposureStack stack;
  stack.plan = plan;
  stack.images.reserve(plan.exposures.size());
  for (double v : plan.exposures) {
    stack.images.push_back(inverse_display(h, v, model));
  }
  return stack;
}

}  // namespace hdriqa
