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

#ifndef HDRIQA_DISPLAY_HPP_
#define HDRIQA_DISPLAY_HPP_

#include <vector>

#include "hdriqa/image.hpp"

namespace hdriqa {

/// Gain-offset-gamma model of a fixed SDR display.
struct DisplayModel {
  double gamma = 2.2;
  double black_level = 1.0 / 128.0;  // display contrast floor b
  double l_min = 1.0;                // cd/m^2
  double l_max = 200.0;              // cd/m^2

  double window_size_stops() const;  // log2(l_max / l_min), 7.64 by default

  /// Exposure gain at which inverse_display undoes forward_display.
  double matched_exposure() const { return 1.0 / l_max; }

  void validate() const;
};

/// Sliding exposure windows: uniformly spaced endpoints anchored at the
/// dark end of the scene, one gain per window.
struct WindowPlan {
  double l0 = 0.0;  // robust scene minimum, log2 relative luminance
  double l1 = 0.0;  // robust scene maximum, log2 relative luminance
  std::vector<double> endpoints;  // l0 + (8/3)*k for k = 1..K
  std::vector<double> exposures;  // 2^(-endpoint)
  int source_width = 0;
  int source_height = 0;

  int count() const { return static_cast<int>(endpoints.size()); }
};

/// Every eight stops of scene range are covered by three windows.
inline constexpr double kWindowSpacingStops = 8.0 / 3.0;

struct ExposureStack {
  WindowPlan plan;
  std::vector<LdrImage> images;  // endpoint order, one per window

  int count() const { return static_cast<int>(images.size()); }
};

/// Display-encodes one exposure of a radiance map:
/// per channel, L = clamp((H*v - b)/(1 - b), 0, 1)^(1/gamma).
LdrImage inverse_display(const HdrImage& h, double exposure_gain,
                         const DisplayModel& model);

/// Maps display-encoded values back to luminance, L = (1-b)*P^gamma + b,
/// scaled so display white lands on l_max.
HdrImage forward_display(const LdrImage& p, const DisplayModel& model);

/// Places exposure windows over the robust scene range. Luminance is the
/// per-pixel max over RGB; the 0.1%/99.9% percentiles of positive values
/// stand in for min/max so dead and hot pixels cannot stretch the range.
WindowPlan plan_windows(const HdrImage& h, const DisplayModel& model);

/// Applies inverse_display at every planned exposure.
ExposureStack decompose(const HdrImage& h, const WindowPlan& plan,
                        const DisplayModel& model);

}  // namespace hdriqa

#endif  // HDRIQA_DISPLAY_HPP_
