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

#include "hdriqa/imageio.hpp"

#include <fstream>
#include <utility>

#include "codecs.hpp"
#include "hdriqa/errors.hpp"

namespace hdriqa {

namespace detail {

std::vector<std::uint8_t> load_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file for reading: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure on " + path.string());
  }
  return bytes;
}

void save_file_bytes(const std::filesystem::path& path,
                     const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open file for writing: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failure on " + path.string());
  }
}

std::uint8_t ByteReader::u8() {
  if (pos_ >= buf_.size()) {
    fail("unexpected end of file");
  }
  return buf_[pos_++];
}

void ByteReader::read(std::uint8_t* dst, std::size_t n) {
  if (remaining() < n) {
    fail("unexpected end of file");
  }
  std::copy(buf_.begin() + static_cast<std::ptrdiff_t>(pos_),
            buf_.begin() + static_cast<std::ptrdiff_t>(pos_ + n), dst);
  pos_ += n;
}

void ByteReader::skip(std::size_t n) {
  if (remaining() < n) {
    fail("unexpected end of file");
  }
  pos_ += n;
}

std::string ByteReader::line() {
  std::string out;
  while (true) {
    if (pos_ >= buf_.size()) {
      fail("unterminated header line");
    }
    char c = static_cast<char>(buf_[pos_++]);
    if (c == '\n') {
      break;
    }
    out.push_back(c);
    if (out.size() > 4096) {
      fail("header line exceeds 4096 bytes");
    }
  }
  return out;
}

void ByteReader::fail(const std::string& what) const { fail_at(pos_, what); }

void ByteReader::fail_at(std::size_t offset, const std::string& what) const {
  throw FormatError(label_ + ": " + what + " (byte offset " +
                    std::to_string(offset) + ")");
}

}  // namespace detail

HdrImage read_hdr(const std::filesystem::path& path, HdrFormat format) {
  const auto bytes = detail::load_file_bytes(path);
  switch (format) {
    case HdrFormat::RadianceRgbe:
      return detail::read_rgbe(bytes, path.string());
    case HdrFormat::Pfm:
      return detail::read_pfm(bytes, path.string());
  }
  throw ArgumentError("unknown HDR format selector");
}

std::optional<HdrFormat> detect_hdr_format(const std::filesystem::path& path) {
  const auto bytes = detail::load_file_bytes(path);
  if (bytes.size() >= 2 && bytes[0] == '#' && bytes[1] == '?') {
    return HdrFormat::RadianceRgbe;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' &&
      (bytes[1] == 'F' || bytes[1] == 'f')) {
    return HdrFormat::Pfm;
  }
  return std::nullopt;
}

HdrImage read_hdr(const std::filesystem::path& path) {
  const auto format = detect_hdr_format(path);
  if (!format) {
    throw FormatError(path.string() +
                      ": not a recognized HDR file (expected '#?' or 'PF' magic)");
  }
  return read_hdr(path, *format);
}

void write_hdr(const HdrImage& image, const std::filesystem::path& path,
               HdrFormat format) {
  image.validate();
  switch (format) {
    case HdrFormat::RadianceRgbe:
      detail::save_file_bytes(path, detail::write_rgbe(image));
      return;
    case HdrFormat::Pfm:
      detail::save_file_bytes(path, detail::write_pfm(image));
      return;
  }
  throw ArgumentError("unknown HDR format selector");
}

LdrImage read_ldr(const std::filesystem::path& path) {
  return detail::read_png(path);
}

void write_ldr(const LdrImage& image, const std::filesystem::path& path) {
  image.validate();
  detail::write_png(image, path);
}

}  // namespace hdriqa
