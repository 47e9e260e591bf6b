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

#ifndef HDRIQA_METRICS_HPP_
#define HDRIQA_METRICS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hdriqa/image.hpp"

namespace hdriqa {

/// Per-pixel local quality scores, channel-averaged; higher is better.
/// Dimensions follow the producing metric's valid-region convention
/// (SSIM maps shrink by the window border).
struct QualityMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major

  double& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

enum class MetricId {
  Mae,
  PsnrMse,
  Ssim,
  Lpips,  // reserved, not shipped
  Dists,  // reserved, not shipped
};

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;

  // Stabilizers on unit-peak data.
  double c1() const { return k1 * k1; }
  double c2() const { return k2 * k2; }
  int border() const { return window / 2; }
};

/// Negated mean absolute RGB difference per pixel.
QualityMap local_map_mae(const LdrImage& ref, const LdrImage& test);

/// Negated mean squared RGB difference per pixel (the PSNR pathway).
QualityMap local_map_sqerr(const LdrImage& ref, const LdrImage& test);

/// Single-scale SSIM with an 11x11 Gaussian window (sigma 1.5), computed
/// per channel on the valid region and channel-averaged. Output shrinks by
/// border() pixels on each side.
QualityMap local_map_ssim(const LdrImage& ref, const LdrImage& test,
                          const SsimParams& params = {});

/// A base LDR quality metric: produces the local map and converts pooled
/// values into the conventionally reported number.
class BaseMetric {
 public:
  explicit BaseMetric(MetricId id, SsimParams ssim = {});

  /// Accepts "mae", "psnr" (or "psnr-mse"), "ssim"; "lpips" and "dists"
  /// are reserved and raise UnsupportedMetricError.
  static BaseMetric from_name(std::string_view name);

  MetricId id() const { return id_; }
  std::string name() const;
  const SsimParams& ssim_params() const { return ssim_; }

  QualityMap local_map(const LdrImage& ref, const LdrImage& test) const;

  /// mae/ssim report the pooled value; psnr converts the pooled negated
  /// MSE into dB against unit peak, capped at 120 dB.
  double finalize(double pooled) const;

  /// Pixels the local map loses on each side relative to its inputs.
  int crop_border() const;

 private:
  MetricId id_;
  SsimParams ssim_;
};

/// Free-function form of BaseMetric::finalize.
double finalize_score(const BaseMetric& metric, double pooled);

}  // namespace hdriqa

#endif  // HDRIQA_METRICS_HPP_
