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

// 8-bit RGB PNG via libpng. Byte p maps to p/255; writing rounds half-up.

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <string>
#include <vector>

#include "codecs.hpp"

namespace hdriqa::detail {

namespace {

struct FileCloser {
  std::FILE* fp = nullptr;
  ~FileCloser() {
    if (fp != nullptr) {
      std::fclose(fp);
    }
  }
};

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadState() {
    if (png != nullptr) {
      png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
    }
  }
};

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteState() {
    if (png != nullptr) {
      png_destroy_write_struct(&png, info != nullptr ? &info : nullptr);
    }
  }
};

}  // namespace

LdrImage read_png(const std::filesystem::path& path) {
  FileCloser file;
  file.fp = std::fopen(path.string().c_str(), "rb");
  if (file.fp == nullptr) {
    throw IoError("cannot open file for reading: " + path.string());
  }

  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.fp) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0) {
    throw FormatError(path.string() + ": not a PNG file");
  }

  PngReadState state;
  state.png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (state.png == nullptr) {
    throw IoError("png_create_read_struct failed");
  }
  state.info = png_create_info_struct(state.png);
  if (state.info == nullptr) {
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(state.png))) {
    throw FormatError(path.string() + ": corrupt PNG stream");
  }
  png_init_io(state.png, file.fp);
  png_set_sig_bytes(state.png, 8);
  png_read_info(state.png, state.info);

  const png_uint_32 width = png_get_image_width(state.png, state.info);
  const png_uint_32 height = png_get_image_height(state.png, state.info);
  const int bit_depth = png_get_bit_depth(state.png, state.info);
  const int color_type = png_get_color_type(state.png, state.info);
  if (bit_depth != 8) {
    throw FormatError(path.string() + ": expected 8-bit PNG, got " +
                      std::to_string(bit_depth) + "-bit");
  }
  if (color_type != PNG_COLOR_TYPE_RGB) {
    throw FormatError(path.string() +
                      ": expected 3-channel RGB PNG (no palette, gray, or alpha)");
  }
  if (width == 0 || height == 0) {
    throw FormatError(path.string() + ": zero-sized PNG");
  }

  png_set_interlace_handling(state.png);
  png_read_update_info(state.png, state.info);

  std::vector<png_byte> pixels(static_cast<std::size_t>(width) * height * 3);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(state.png, rows.data());
  png_read_end(state.png, nullptr);

  LdrImage image(static_cast<int>(width), static_cast<int>(height));
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    image.data()[i] = pixels[i] / 255.0;
  }
  return image;
}

void write_png(const LdrImage& image, const std::filesystem::path& path) {
  FileCloser file;
  file.fp = std::fopen(path.string().c_str(), "wb");
  if (file.fp == nullptr) {
    throw IoError("cannot open file for writing: " + path.string());
  }

  PngWriteState state;
  state.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                      nullptr);
  if (state.png == nullptr) {
    throw IoError("png_create_write_struct failed");
  }
  state.info = png_create_info_struct(state.png);
  if (state.info == nullptr) {
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(state.png))) {
    throw IoError("write failure on " + path.string());
  }
  png_init_io(state.png, file.fp);
  png_set_IHDR(state.png, state.info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(state.png, state.info);

  std::vector<png_byte> row(static_cast<std::size_t>(image.width()) * 3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        row[static_cast<std::size_t>(x) * 3 + c] =
            static_cast<png_byte>(std::lround(image.at(x, y, c) * 255.0));
      }
    }
    png_write_row(state.png, row.data());
  }
  png_write_end(state.png, state.info);
}

}  // namespace hdriqa::detail
