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

#ifndef HDRIQA_IMAGE_HPP_
#define HDRIQA_IMAGE_HPP_

#include <cstddef>
#include <vector>

namespace hdriqa {

/// Linear, relative radiance map. Three interleaved RGB channels of
/// nonnegative finite values; no display encoding applied.
class HdrImage {
 public:
  HdrImage() = default;
  HdrImage(int width, int height);  // zero-filled

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Per-pixel scene luminance proxy: max over RGB.
  double luminance(int x, int y) const;

  /// Throws ArgumentError if dimensions are nonpositive or any value is
  /// negative or non-finite.
  void validate() const;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3 + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Display-encoded (post-gamma) image; three interleaved RGB channels,
/// each value in [0, 1].
class LdrImage {
 public:
  LdrImage() = default;
  LdrImage(int width, int height);  // zero-filled

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Per-pixel max over RGB, the saturation detector used by the
  /// well-exposedness weights.
  double max_channel(int x, int y) const;

  /// Throws ArgumentError if dimensions are nonpositive or any value falls
  /// outside [0, 1].
  void validate() const;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3 + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

inline bool same_dims(const HdrImage& a, const HdrImage& b) {
  return a.width() == b.width() && a.height() == b.height();
}
inline bool same_dims(const LdrImage& a, const LdrImage& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace hdriqa

#endif  // HDRIQA_IMAGE_HPP_
