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

#ifndef HDRIQA_IMAGEIO_HPP_
#define HDRIQA_IMAGEIO_HPP_

#include <filesystem>
#include <optional>

#include "hdriqa/image.hpp"

namespace hdriqa {

enum class HdrFormat {
  RadianceRgbe,  // ".hdr", "#?..." magic, flat or RLE scanlines
  Pfm,           // "PF" magic, scale sign selects endianness
};

/// Reads a linear radiance image. Negative or NaN samples are rejected with
/// a FormatError naming the byte offset, never clamped.
HdrImage read_hdr(const std::filesystem::path& path, HdrFormat format);

/// Sniffs magic bytes; returns nullopt when the file is neither format.
std::optional<HdrFormat> detect_hdr_format(const std::filesystem::path& path);

/// read_hdr with format detection by magic bytes.
HdrImage read_hdr(const std::filesystem::path& path);

/// Writes radiance data. PFM round-trips bit-exactly for float32 values;
/// RGBE quantizes to the shared-exponent encoding.
void write_hdr(const HdrImage& image, const std::filesystem::path& path,
               HdrFormat format);

/// Reads an 8-bit 3-channel PNG; byte p maps to p/255. Anything else
/// (16-bit, palette, grayscale, alpha) is a FormatError.
LdrImage read_ldr(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG; values are rounded half-up to value*255.
void write_ldr(const LdrImage& image, const std::filesystem::path& path);

}  // namespace hdriqa

#endif  // HDRIQA_IMAGEIO_HPP_
