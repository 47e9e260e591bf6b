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

// Deterministic index-parallel helper. Each job owns its output slot, so
// results are bit-identical for any thread count. HDRIQA_THREADS caps the
// worker count; unset or 0 means hardware concurrency.

#ifndef HDRIQA_SRC_PARALLEL_HPP_
#define HDRIQA_SRC_PARALLEL_HPP_

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace hdriqa::detail {

inline unsigned thread_limit() {
  if (const char* env = std::getenv("HDRIQA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_limit(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        fn(i);
      }
    }));
  }
  for (auto& fut : futures) {
    fut.get();  // rethrows the first worker exception
  }
}

}  // namespace hdriqa::detail

#endif  // HDRIQA_SRC_PARALLEL_HPP_
