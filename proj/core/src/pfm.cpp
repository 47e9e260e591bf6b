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

// PFM ("PF" magic): ASCII header of magic, dimensions, and a scale whose
// sign selects endianness, followed by packed float32 RGB rows ordered
// bottom-to-top.

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "codecs.hpp"

namespace hdriqa::detail {

namespace {

bool is_pfm_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

std::string next_token(ByteReader& r) {
  std::string tok;
  while (!r.eof()) {
    char c = static_cast<char>(r.u8());
    if (is_pfm_space(c)) {
      if (tok.empty()) {
        continue;  // leading whitespace
      }
      return tok;
    }
    tok.push_back(c);
    if (tok.size() > 64) {
      r.fail("header token exceeds 64 bytes");
    }
  }
  r.fail("unexpected end of file in header");
}

long parse_dim(ByteReader& r, const std::string& tok, const char* which) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) {
    r.fail(std::string("malformed ") + which + " '" + tok + "'");
  }
  return value;
}

float swap_float(float v) {
  auto bits = std::bit_cast<std::uint32_t>(v);
  bits = ((bits & 0x000000FFu) << 24) | ((bits & 0x0000FF00u) << 8) |
         ((bits & 0x00FF0000u) >> 8) | ((bits & 0xFF000000u) >> 24);
  return std::bit_cast<float>(bits);
}

constexpr bool kHostLittleEndian = std::endian::native == std::endian::little;

}  // namespace

HdrImage read_pfm(const std::vector<std::uint8_t>& bytes,
                  const std::string& label) {
  ByteReader r(bytes, label);

  const std::string magic = next_token(r);
  if (magic == "Pf") {
    r.fail_at(0, "grayscale PFM is not supported (need 'PF')");
  }
  if (magic != "PF") {
    r.fail_at(0, "bad magic '" + magic + "' (expected 'PF')");
  }

  const std::size_t dim_offset = r.offset();
  const long width = parse_dim(r, next_token(r), "width");
  const long height = parse_dim(r, next_token(r), "height");
  if (width <= 0 || height <= 0) {
    r.fail_at(dim_offset, "nonpositive dimensions " + std::to_string(width) +
                              "x" + std::to_string(height));
  }

  const std::string scale_tok = next_token(r);
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(scale_tok, &used);
    if (used != scale_tok.size()) {
      throw std::invalid_argument(scale_tok);
    }
  } catch (const std::exception&) {
    r.fail("malformed scale '" + scale_tok + "'");
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    r.fail("scale must be finite and nonzero");
  }
  const bool file_little_endian = scale < 0.0;
  const double magnitude = std::fabs(scale);

  const std::size_t samples =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (r.remaining() < samples * 4) {
    r.fail("truncated payload: need " + std::to_string(samples * 4) +
           " bytes of raster, have " + std::to_string(r.remaining()));
  }

  HdrImage image(static_cast<int>(width), static_cast<int>(height));
  // Raster rows run bottom-to-top.
  for (long row = height - 1; row >= 0; --row) {
    for (long x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const std::size_t sample_offset = r.offset();
        std::uint8_t raw[4];
        r.read(raw, 4);
        float f;
        std::memcpy(&f, raw, 4);
        if (file_little_endian != kHostLittleEndian) {
          f = swap_float(f);
        }
        double v = static_cast<double>(f);
        if (magnitude != 1.0) {
          v *= magnitude;
        }
        if (std::isnan(v)) {
          r.fail_at(sample_offset, "NaN sample");
        }
        if (!std::isfinite(v)) {
          r.fail_at(sample_offset, "non-finite sample");
        }
        if (v < 0.0) {
          r.fail_at(sample_offset, "negative radiance sample");
        }
        image.at(static_cast<int>(x), static_cast<int>(row), c) = v;
      }
    }
  }
  return image;
}

std::vector<std::uint8_t> write_pfm(const HdrImage& image) {
  const std::string header = "PF\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n-1.0\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + image.pixel_count() * 12);
  for (int row = image.height() - 1; row >= 0; --row) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        float f = static_cast<float>(image.at(x, row, c));
        if (!kHostLittleEndian) {
          f = swap_float(f);
        }
        std::uint8_t raw[4];
        std::memcpy(raw, &f, 4);
        out.insert(out.end(), raw, raw + 4);
      }
    }
  }
  return out;
}

}  // namespace hdriqa::detail
