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

// Internal codec entry points and byte-level parsing helpers.

#ifndef HDRIQA_SRC_CODECS_HPP_
#define HDRIQA_SRC_CODECS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hdriqa/errors.hpp"
#include "hdriqa/image.hpp"

namespace hdriqa::detail {

std::vector<std::uint8_t> load_file_bytes(const std::filesystem::path& path);
void save_file_bytes(const std::filesystem::path& path,
                     const std::vector<std::uint8_t>& bytes);

// Cursor over an in-memory file; every failure reports the byte offset.
class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t>& buf, std::string file_label)
      : buf_(buf), label_(std::move(file_label)) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return buf_.size() - pos_; }
  bool eof() const { return pos_ >= buf_.size(); }

  std::uint8_t u8();
  void read(std::uint8_t* dst, std::size_t n);
  void skip(std::size_t n);

  // Reads up to and including '\n'; the newline is consumed but not returned.
  std::string line();

  [[noreturn]] void fail(const std::string& what) const;
  [[noreturn]] void fail_at(std::size_t offset, const std::string& what) const;

 private:
  const std::vector<std::uint8_t>& buf_;
  std::string label_;
  std::size_t pos_ = 0;
};

HdrImage read_pfm(const std::vector<std::uint8_t>& bytes,
                  const std::string& label);
std::vector<std::uint8_t> write_pfm(const HdrImage& image);

HdrImage read_rgbe(const std::vector<std::uint8_t>& bytes,
                   const std::string& label);
std::vector<std::uint8_t> write_rgbe(const HdrImage& image);

LdrImage read_png(const std::filesystem::path& path);
void write_png(const LdrImage& image, const std::filesystem::path& path);

}  // namespace hdriqa::detail

#endif  // HDRIQA_SRC_CODECS_HPP_
