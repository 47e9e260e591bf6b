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

#include "hdriqa/pooling.hpp"

#include <cmath>

#include "hdriqa/errors.hpp"

namespace hdriqa {

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

WeightField well_exposedness_raw(const ExposureStack& ref_stack,
                                 double epsilon) {
  if (ref_stack.count() == 0) {
    throw ArgumentError("cannot weight an empty exposure stack");
  }
  if (!(epsilon > 0.0)) {
    throw ArgumentError("exposedness epsilon must be positive");
  }
  const LdrImage& first = ref_stack.images.front();
  WeightField field;
  field.width = first.width();
  field.height = first.height();
  field.epsilon = epsilon;
  field.normalized = false;
  field.planes.reserve(ref_stack.images.size());
  for (const LdrImage& ldr : ref_stack.images) {
    std::vector<double> plane(ldr.pixel_count());
    for (int y = 0; y < ldr.height(); ++y) {
      for (int x = 0; x < ldr.width(); ++x) {
        const double v = ldr.max_channel(x, y);
        plane[static_cast<std::size_t>(y) * field.width + x] =
            (v >= 0.1 && v <= 0.9) ? 1.0 : epsilon;
      }
    }
    field.planes.push_back(std::move(plane));
  }
  return field;
}

void normalize_across_exposures(WeightField& field) {
  if (field.normalized) {
    return;
  }
  const std::size_t pixels =
      static_cast<std::size_t>(field.width) * field.height;
  for (std::size_t i = 0; i < pixels; ++i) {
    double sum = 0.0;
    for (const auto& plane : field.planes) {
      sum += plane[i];
    }
    for (auto& plane : field.planes) {
      plane[i] /= sum;
    }
  }
  field.normalized = true;
}

WeightField well_exposedness(const ExposureStack& ref_stack, double epsilon) {
  WeightField field = well_exposedness_raw(ref_stack, epsilon);
  normalize_across_exposures(field);
  return field;
}

double pool_exposure(const QualityMap& map, const WeightField& weights,
                     int k) {
  if (k < 0 || k >= weights.count()) {
    throw ArgumentError("weight plane index out of range");
  }
  const int dx = weights.width - map.width;
  const int dy = weights.height - map.height;
  if (dx < 0 || dy < 0 || dx % 2 != 0 || dy % 2 != 0) {
    throw ArgumentError(
        "quality map cannot be center-aligned to the weight field");
  }
  const int bx = dx / 2;
  const int by = dy / 2;

  KahanSum num;
  KahanSum den;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const double w = weights.at(k, x + bx, y + by);
      num.add(w * map.at(x, y));
      den.add(w);
    }
  }
  if (den.sum <= 0.0) {
    throw NumericalError("degenerate pooling weights (sum to zero)");
  }
  return num.sum / den.sum;
}

AggregationConfig AggregationConfig::uniform() { return {}; }

AggregationConfig AggregationConfig::from_values(std::vector<double> values,
                                                 double tol) {
  if (values.empty()) {
    throw ArgumentError("global weights must be nonempty");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ArgumentError("global weights must be nonnegative and finite");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > tol) {
    throw ArgumentError("global weights must sum to 1 (got " +
                        std::to_string(sum) + ")");
  }
  for (double& v : values) {
    v /= sum;
  }
  AggregationConfig config;
  config.global_weights = std::move(values);
  return config;
}

std::vector<double> AggregationConfig::resolve(int count) const {
  if (count <= 0) {
    throw ArgumentError("exposure count must be positive");
  }
  if (is_uniform()) {
    return std::vector<double>(count, 1.0 / count);
  }
  if (static_cast<int>(global_weights.size()) != count) {
    throw ArgumentError("global weight count " +
                        std::to_string(global_weights.size()) +
                        " does not match exposure count " +
                        std::to_string(count));
  }
  return global_weights;
}

double aggregate(const std::vector<double>& per_exposure,
                 const AggregationConfig& config) {
  if (per_exposure.empty()) {
    throw ArgumentError("nothing to aggregate");
  }
  const auto g = config.resolve(static_cast<int>(per_exposure.size()));
  double sum_w = 0.0;
  for (double v : g) {
    sum_w += v;
  }
  if (std::fabs(sum_w - 1.0) > 1e-12) {
    throw ArgumentError("global weights must sum to 1 within 1e-12");
  }
  KahanSum acc;
  for (std::size_t i = 0; i < per_exposure.size(); ++i) {
    acc.add(g[i] * per_exposure[i]);
  }
  return acc.sum;
}

}  // namespace hdriqa
