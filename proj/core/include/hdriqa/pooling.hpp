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

#ifndef HDRIQA_POOLING_HPP_
#define HDRIQA_POOLING_HPP_

#include <vector>

#include "hdriqa/display.hpp"
#include "hdriqa/metrics.hpp"

namespace hdriqa {

inline constexpr double kDefaultExposednessEpsilon = 1e-5;

/// Per-pixel, per-exposure pooling weights. Raw weights are exactly 1
/// (well exposed) or epsilon; normalization makes them sum to 1 across
/// exposures at every pixel.
struct WeightField {
  int width = 0;
  int height = 0;
  double epsilon = kDefaultExposednessEpsilon;
  bool normalized = false;
  std::vector<std::vector<double>> planes;  // one row-major plane per exposure

  int count() const { return static_cast<int>(planes.size()); }
  double at(int k, int x, int y) const {
    return planes[k][static_cast<std::size_t>(y) * width + x];
  }
};

/// Raw well-exposedness weights from the reference stack: weight 1 where
/// the per-pixel max channel lies in [0.1, 0.9], epsilon elsewhere.
WeightField well_exposedness_raw(const ExposureStack& ref_stack,
                                 double epsilon = kDefaultExposednessEpsilon);

/// Rescales each pixel's weights to sum to 1 across exposures.
void normalize_across_exposures(WeightField& field);

/// well_exposedness_raw followed by normalization.
WeightField well_exposedness(const ExposureStack& ref_stack,
                             double epsilon = kDefaultExposednessEpsilon);

/// Weighted spatial pool of one exposure's quality map. When the map is
/// smaller than the weight plane (valid-region metrics), the weights are
/// center-cropped first. Row-major compensated summation keeps results
/// reproducible.
double pool_exposure(const QualityMap& map, const WeightField& weights, int k);

/// Nonnegative per-exposure mixing weights summing to 1; empty means
/// uniform 1/K.
struct AggregationConfig {
  std::vector<double> global_weights;

  static AggregationConfig uniform();
  /// Validates sum within `tol` of 1 and renormalizes exactly.
  static AggregationConfig from_values(std::vector<double> values,
                                       double tol = 1e-6);
  bool is_uniform() const { return global_weights.empty(); }
  std::vector<double> resolve(int count) const;
};

/// Cross-exposure aggregate: dot product of the per-exposure scores with
/// the global weights.
double aggregate(const std::vector<double>& per_exposure,
                 const AggregationConfig& config);

}  // namespace hdriqa

#endif  // HDRIQA_POOLING_HPP_
