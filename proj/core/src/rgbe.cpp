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

// Radiance picture format: '#?' signature, variable lines up to a blank
// line, a '-Y h +X w' resolution string, then shared-exponent RGBE pixels
// stored flat or as per-channel RLE scanlines.

#include <cmath>
#include <cstdio>
#include <string>

#include "codecs.hpp"

namespace hdriqa::detail {

namespace {

constexpr int kMinRleWidth = 8;
constexpr int kMaxRleWidth = 0x7fff;

void decode_rgbe(const std::uint8_t rgbe[4], double out[3]) {
  if (rgbe[3] == 0) {
    out[0] = out[1] = out[2] = 0.0;
    return;
  }
  const double f = std::ldexp(1.0, static_cast<int>(rgbe[3]) - (128 + 8));
  out[0] = rgbe[0] * f;
  out[1] = rgbe[1] * f;
  out[2] = rgbe[2] * f;
}

void encode_rgbe(double r, double g, double b, std::uint8_t rgbe[4]) {
  const double v = std::max({r, g, b});
  if (v < 1e-32) {
    rgbe[0] = rgbe[1] = rgbe[2] = rgbe[3] = 0;
    return;
  }
  int e = 0;
  const double m = std::frexp(v, &e);
  if (e + 128 > 255) {
    throw FormatError("radiance value " + std::to_string(v) +
                      " exceeds the RGBE exponent range");
  }
  if (e + 128 < 0) {  // denormal-small: flush to zero
    rgbe[0] = rgbe[1] = rgbe[2] = rgbe[3] = 0;
    return;
  }
  const double scale = m * 256.0 / v;
  rgbe[0] = static_cast<std::uint8_t>(r * scale);
  rgbe[1] = static_cast<std::uint8_t>(g * scale);
  rgbe[2] = static_cast<std::uint8_t>(b * scale);
  rgbe[3] = static_cast<std::uint8_t>(e + 128);
}

struct Header {
  int width = 0;
  int height = 0;
};

Header read_header(ByteReader& r) {
  const std::string signature = r.line();
  if (signature.size() < 2 || signature[0] != '#' || signature[1] != '?') {
    r.fail_at(0, "bad signature (expected '#?RADIANCE')");
  }

  bool format_seen = false;
  while (true) {
    const std::size_t line_offset = r.offset();
    const std::string line = r.line();
    if (line.empty()) {
      break;  // blank line ends the variable section
    }
    if (line[0] == '#') {
      continue;  // comment
    }
    if (line.rfind("FORMAT=", 0) == 0) {
      if (line != "FORMAT=32-bit_rle_rgbe") {
        r.fail_at(line_offset, "unsupported pixel format '" + line + "'");
      }
      format_seen = true;
    }
    // EXPOSURE, GAMMA, PRIMARIES and other variables carry calibration
    // metadata; values here are relative radiance, so they are skipped.
  }
  if (!format_seen) {
    r.fail("no FORMAT specifier before end of header");
  }

  const std::size_t res_offset = r.offset();
  const std::string res = r.line();
  Header h;
  if (std::sscanf(res.c_str(), "-Y %d +X %d", &h.height, &h.width) != 2) {
    if (res.find('Y') != std::string::npos &&
        res.find('X') != std::string::npos) {
      r.fail_at(res_offset, "unsupported scanline orientation '" + res + "'");
    }
    r.fail_at(res_offset, "missing image size specifier");
  }
  if (h.width <= 0 || h.height <= 0) {
    r.fail_at(res_offset, "nonpositive dimensions " + std::to_string(h.width) +
                              "x" + std::to_string(h.height));
  }
  return h;
}

void read_flat_scanline(ByteReader& r, HdrImage& image, int y,
                        const std::uint8_t* first_pixel) {
  double rgb[3];
  int x = 0;
  if (first_pixel != nullptr) {
    decode_rgbe(first_pixel, rgb);
    for (int c = 0; c < 3; ++c) image.at(x, y, c) = rgb[c];
    ++x;
  }
  for (; x < image.width(); ++x) {
    std::uint8_t px[4];
    r.read(px, 4);
    decode_rgbe(px, rgb);
    for (int c = 0; c < 3; ++c) image.at(x, y, c) = rgb[c];
  }
}

void read_rle_scanline(ByteReader& r, HdrImage& image, int y) {
  const int width = image.width();
  std::vector<std::uint8_t> channels(static_cast<std::size_t>(width) * 4);
  for (int c = 0; c < 4; ++c) {
    int filled = 0;
    while (filled < width) {
      const std::size_t op_offset = r.offset();
      const std::uint8_t code = r.u8();
      if (code > 128) {  // run
        const int count = code - 128;
        if (count > width - filled) {
          r.fail_at(op_offset, "RLE run overflows scanline");
        }
        const std::uint8_t value = r.u8();
        for (int i = 0; i < count; ++i) {
          channels[static_cast<std::size_t>(c) * width + filled++] = value;
        }
      } else {  // literal span
        const int count = code;
        if (count == 0 || count > width - filled) {
          r.fail_at(op_offset, "bad RLE literal count");
        }
        r.read(&channels[static_cast<std::size_t>(c) * width + filled],
               static_cast<std::size_t>(count));
        filled += count;
      }
    }
  }
  double rgb[3];
  for (int x = 0; x < width; ++x) {
    const std::uint8_t px[4] = {channels[x], channels[width + x],
                                channels[2 * width + x],
                                channels[3 * width + x]};
    decode_rgbe(px, rgb);
    for (int c = 0; c < 3; ++c) image.at(x, y, c) = rgb[c];
  }
}

void append_rle_channel(std::vector<std::uint8_t>& out,
                        const std::uint8_t* data, int n) {
  constexpr int kMinRun = 4;
  int cur = 0;
  while (cur < n) {
    int run_start = cur;
    int run_len = 0;
    int prev_run_len = 0;
    // find the next run of at least kMinRun bytes
    while (run_len < kMinRun && run_start < n) {
      run_start += run_len;
      prev_run_len = run_len;
      run_len = 1;
      while (run_start + run_len < n && run_len < 127 &&
             data[run_start] == data[run_start + run_len]) {
        ++run_len;
      }
    }
    // a short run immediately before the long one can be emitted as a run
    if (prev_run_len > 1 && prev_run_len == run_start - cur) {
      out.push_back(static_cast<std::uint8_t>(128 + prev_run_len));
      out.push_back(data[cur]);
      cur = run_start;
    }
    while (cur < run_start) {
      int count = std::min(run_start - cur, 128);
      out.push_back(static_cast<std::uint8_t>(count));
      out.insert(out.end(), data + cur, data + cur + count);
      cur += count;
    }
    if (run_len >= kMinRun) {
      out.push_back(static_cast<std::uint8_t>(128 + run_len));
      out.push_back(data[run_start]);
      cur += run_len;
    }
  }
}

}  // namespace

HdrImage read_rgbe(const std::vector<std::uint8_t>& bytes,
                   const std::string& label) {
  ByteReader r(bytes, label);
  const Header h = read_header(r);
  HdrImage image(h.width, h.height);

  bool flat_rest = false;
  for (int y = 0; y < h.height; ++y) {
    if (flat_rest || h.width < kMinRleWidth || h.width > kMaxRleWidth) {
      read_flat_scanline(r, image, y, nullptr);
      continue;
    }
    std::uint8_t head[4];
    r.read(head, 4);
    if (head[0] == 2 && head[1] == 2 && (head[2] & 0x80) == 0) {
      const int coded_width = (static_cast<int>(head[2]) << 8) | head[3];
      if (coded_width != h.width) {
        r.fail_at(r.offset() - 4, "RLE scanline width " +
                                      std::to_string(coded_width) +
                                      " does not match image width");
      }
      read_rle_scanline(r, image, y);
    } else {
      // not an RLE marker: 'head' is the first pixel of a flat file
      flat_rest = true;
      read_flat_scanline(r, image, y, head);
    }
  }
  return image;
}

std::vector<std::uint8_t> write_rgbe(const HdrImage& image) {
  const std::string header = "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " +
                             std::to_string(image.height()) + " +X " +
                             std::to_string(image.width()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());

  const int width = image.width();
  const bool use_rle = width >= kMinRleWidth && width <= kMaxRleWidth;
  std::vector<std::uint8_t> channels(static_cast<std::size_t>(width) * 4);
  for (int y = 0; y < image.height(); ++y) {
    if (!use_rle) {
      for (int x = 0; x < width; ++x) {
        std::uint8_t px[4];
        encode_rgbe(image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2),
                    px);
        out.insert(out.end(), px, px + 4);
      }
      continue;
    }
    out.push_back(2);
    out.push_back(2);
    out.push_back(static_cast<std::uint8_t>(width >> 8));
    out.push_back(static_cast<std::uint8_t>(width & 0xFF));
    for (int x = 0; x < width; ++x) {
      std::uint8_t px[4];
      encode_rgbe(image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2), px);
      for (int c = 0; c < 4; ++c) {
        channels[static_cast<std::size_t>(c) * width + x] = px[c];
      }
    }
    for (int c = 0; c < 4; ++c) {
      append_rle_channel(out, &channels[static_cast<std::size_t>(c) * width],
                         width);
    }
  }
  return out;
}

}  // namespace hdriqa::detail
