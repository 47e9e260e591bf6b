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

#include "hdriqa/metrics.hpp"

#include <cmath>

#include "hdriqa/errors.hpp"

namespace hdriqa {

namespace {

void require_same_dims(const LdrImage& ref, const LdrImage& test) {
  if (!same_dims(ref, test)) {
    throw ArgumentError("reference and test images must share dimensions");
  }
}

std::vector<double> gaussian_kernel(int window, double sigma) {
  std::vector<double> g(window);
  const int center = window / 2;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - center;
    g[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += g[i];
  }
  for (double& v : g) {
    v /= sum;
  }
  return g;
}

// Separable valid-region Gaussian blur: input W x H, output (W-2r) x (H-2r).
std::vector<double> blur_valid(const std::vector<double>& in, int width,
                               int height, const std::vector<double>& kernel) {
  const int window = static_cast<int>(kernel.size());
  const int out_w = width - window + 1;
  const int out_h = height - window + 1;
  std::vector<double> horiz(static_cast<std::size_t>(out_w) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < window; ++i) {
        acc += kernel[i] * in[static_cast<std::size_t>(y) * width + x + i];
      }
      horiz[static_cast<std::size_t>(y) * out_w + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < window; ++j) {
        acc += kernel[j] * horiz[static_cast<std::size_t>(y + j) * out_w + x];
      }
      out[static_cast<std::size_t>(y) * out_w + x] = acc;
    }
  }
  return out;
}

std::vector<double> extract_channel(const LdrImage& img, int c) {
  std::vector<double> plane(img.pixel_count());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    plane[i] = img.data()[i * 3 + c];
  }
  return plane;
}

}  // namespace

QualityMap local_map_mae(const LdrImage& ref, const LdrImage& test) {
  require_same_dims(ref, test);
  QualityMap map{ref.width(), ref.height(), {}};
  map.values.resize(ref.pixel_count());
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const std::size_t base = i * 3;
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
      acc += std::fabs(ref.data()[base + c] - test.data()[base + c]);
    }
    map.values[i] = -acc / 3.0;
  }
  return map;
}

QualityMap local_map_sqerr(const LdrImage& ref, const LdrImage& test) {
  require_same_dims(ref, test);
  QualityMap map{ref.width(), ref.height(), {}};
  map.values.resize(ref.pixel_count());
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const std::size_t base = i * 3;
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double d = ref.data()[base + c] - test.data()[base + c];
      acc += d * d;
    }
    map.values[i] = -acc / 3.0;
  }
  return map;
}

QualityMap local_map_ssim(const LdrImage& ref, const LdrImage& test,
                          const SsimParams& params) {
  require_same_dims(ref, test);
  if (ref.width() < params.window || ref.height() < params.window) {
    throw ArgumentError("image smaller than the SSIM window (" +
                        std::to_string(params.window) + " px)");
  }
  const auto kernel = gaussian_kernel(params.window, params.sigma);
  const int out_w = ref.width() - params.window + 1;
  const int out_h = ref.height() - params.window + 1;
  const double c1 = params.c1();
  const double c2 = params.c2();

  QualityMap map{out_w, out_h, {}};
  map.values.assign(static_cast<std::size_t>(out_w) * out_h, 0.0);

  std::vector<double> xx(ref.pixel_count()), yy(ref.pixel_count()),
      xy(ref.pixel_count());
  for (int c = 0; c < 3; ++c) {
    const auto x = extract_channel(ref, c);
    const auto y = extract_channel(test, c);
    for (std::size_t i = 0; i < x.size(); ++i) {
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    const auto mu_x = blur_valid(x, ref.width(), ref.height(), kernel);
    const auto mu_y = blur_valid(y, ref.width(), ref.height(), kernel);
    const auto e_xx = blur_valid(xx, ref.width(), ref.height(), kernel);
    const auto e_yy = blur_valid(yy, ref.width(), ref.height(), kernel);
    const auto e_xy = blur_valid(xy, ref.width(), ref.height(), kernel);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
      const double mx = mu_x[i];
      const double my = mu_y[i];
      const double var_x = e_xx[i] - mx * mx;
      const double var_y = e_yy[i] - my * my;
      const double cov = e_xy[i] - mx * my;
      const double ssim = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                          ((mx * mx + my * my + c1) * (var_x + var_y + c2));
      map.values[i] += ssim / 3.0;
    }
  }
  return map;
}

BaseMetric::BaseMetric(MetricId id, SsimParams ssim) : id_(id), ssim_(ssim) {
  if (id == MetricId::Lpips || id == MetricId::Dists) {
    throw UnsupportedMetricError(
        "metric '" + std::string(id == MetricId::Lpips ? "lpips" : "dists") +
        "' is a reserved identifier and is not available in this build");
  }
}

BaseMetric BaseMetric::from_name(std::string_view name) {
  if (name == "mae") {
    return BaseMetric(MetricId::Mae);
  }
  if (name == "psnr" || name == "psnr-mse") {
    return BaseMetric(MetricId::PsnrMse);
  }
  if (name == "ssim") {
    return BaseMetric(MetricId::Ssim);
  }
  if (name == "lpips") {
    return BaseMetric(MetricId::Lpips);
  }
  if (name == "dists") {
    return BaseMetric(MetricId::Dists);
  }
  throw ArgumentError("unknown metric '" + std::string(name) +
                      "' (expected mae, psnr, or ssim)");
}

std::string BaseMetric::name() const {
  switch (id_) {
    case MetricId::Mae:
      return "mae";
    case MetricId::PsnrMse:
      return "psnr";
    case MetricId::Ssim:
      return "ssim";
    case MetricId::Lpips:
      return "lpips";
    case MetricId::Dists:
      return "dists";
  }
  return "?";
}

QualityMap BaseMetric::local_map(const LdrImage& ref,
                                 const LdrImage& test) const {
  switch (id_) {
    case MetricId::Mae:
      return local_map_mae(ref, test);
    case MetricId::PsnrMse:
      return local_map_sqerr(ref, test);
    case MetricId::Ssim:
      return local_map_ssim(ref, test, ssim_);
    default:
      throw UnsupportedMetricError("metric '" + name() + "' is not available");
  }
}

double BaseMetric::finalize(double pooled) const {
  if (id_ == MetricId::PsnrMse) {
    const double mse = std::max(-pooled, 1e-12);  // caps identical pairs at 120 dB
    return 10.0 * std::log10(1.0 / mse);
  }
  return pooled;
}

int BaseMetric::crop_border() const {
  return id_ == MetricId::Ssim ? ssim_.border() : 0;
}

double finalize_score(const BaseMetric& metric, double pooled) {
  return metric.finalize(pooled);
}

}  // namespace hdriqa
