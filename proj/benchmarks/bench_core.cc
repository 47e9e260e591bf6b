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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hdriqa/compensate.hpp"

namespace {

using namespace hdriqa;

HdrImage make_scene(int size, double stops, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> logdist(0.0, stops);
  HdrImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double lum = std::exp2(logdist(rng));
      for (int c = 0; c < 3; ++c) {
        img.at(x, y, c) = lum * (0.7 + 0.1 * c);
      }
    }
  }
  return img;
}

LdrImage make_ldr(int size, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  LdrImage img(size, size);
  for (double& v : img.data()) {
    v = dist(rng);
  }
  return img;
}

void BM_InverseDisplay(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const HdrImage scene = make_scene(size, 8.0, 1);
  const DisplayModel model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_display(scene, 0.01, model));
  }
  state.SetItemsProcessed(state.iterations() * scene.pixel_count());
}
BENCHMARK(BM_InverseDisplay)->Arg(128)->Arg(512);

void BM_Decompose(benchmark::State& state) {
  const HdrImage scene = make_scene(256, 8.0, 2);
  const DisplayModel model;
  const WindowPlan plan = plan_windows(scene, model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(scene, plan, model));
  }
}
BENCHMARK(BM_Decompose);

void BM_SsimMap(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const LdrImage a = make_ldr(size, 3);
  const LdrImage b = make_ldr(size, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_map_ssim(a, b));
  }
  state.SetItemsProcessed(state.iterations() * a.pixel_count());
}
BENCHMARK(BM_SsimMap)->Arg(64)->Arg(256);

void BM_MaeMap(benchmark::State& state) {
  const LdrImage a = make_ldr(256, 5);
  const LdrImage b = make_ldr(256, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_map_mae(a, b));
  }
}
BENCHMARK(BM_MaeMap);

void BM_ScoreHdr(benchmark::State& state) {
  const HdrImage ref = make_scene(128, 8.0, 7);
  HdrImage test = ref;
  for (double& v : test.data()) {
    v *= 1.4;
  }
  const DisplayModel model;
  const BaseMetric metric(MetricId::Mae);
  CompensationConfig comp;
  comp.mode = state.range(0) == 1 ? CompensationMode::Optimize
                                  : CompensationMode::None;
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_hdr(ref, test, metric, model, comp));
  }
}
BENCHMARK(BM_ScoreHdr)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
