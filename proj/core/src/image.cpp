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

#include "hdriqa/image.hpp"

#include <algorithm>
#include <cmath>

#include "hdriqa/errors.hpp"

namespace hdriqa {

HdrImage::HdrImage(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("HdrImage dimensions must be positive");
  }
  data_.assign(pixel_count() * 3, 0.0);
}

double HdrImage::luminance(int x, int y) const {
  return std::max({at(x, y, 0), at(x, y, 1), at(x, y, 2)});
}

void HdrImage::validate() const {
  if (width_ <= 0 || height_ <= 0) {
    throw ArgumentError("HdrImage dimensions must be positive");
  }
  for (double v : data_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ArgumentError("HdrImage values must be finite and nonnegative");
    }
  }
}

LdrImage::LdrImage(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("LdrImage dimensions must be positive");
  }
  data_.assign(pixel_count() * 3, 0.0);
}

double LdrImage::max_channel(int x, int y) const {
  return std::max({at(x, y, 0), at(x, y, 1), at(x, y, 2)});
}

void LdrImage::validate() const {
  if (width_ <= 0 || height_ <= 0) {
    throw ArgumentError("LdrImage dimensions must be positive");
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ArgumentError("LdrImage values must lie in [0, 1]");
    }
  }
}

}  // namespace hdriqa
