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

#include <cmath>
#include <doctest.h>

#include "hdriqa/errors.hpp"
#include "hdriqa/metrics.hpp"
#include "testutil.hpp"

using namespace hdriqa;

namespace {

LdrImage constant_ldr(int w, int h, double value) {
  LdrImage img(w, h);
  for (double& v : img.data()) {
    v = value;
  }
  return img;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("mae map: identity, constant offset, and oracle agreement") {
  const LdrImage a = constant_ldr(4, 4, 1.0);
  const LdrImage b = constant_ldr(4, 4, 0.75);

  for (double v : local_map_mae(a, a).values) {
    CHECK(v == 0.0);
  }
  for (double v : local_map_mae(a, b).values) {
    CHECK(v == doctest::Approx(-0.25).epsilon(1e-12));
  }

  const LdrImage x = testutil::random_ldr(4, 4, 100);
  const LdrImage y = testutil::random_ldr(4, 4, 101);
  const QualityMap map = local_map_mae(x, y);
  for (int yy = 0; yy < 4; ++yy) {
    for (int xx = 0; xx < 4; ++xx) {
      CHECK(map.at(xx, yy) ==
            doctest::Approx(testutil::oracle_mae_value(x, y, xx, yy))
                .epsilon(1e-15));
    }
  }
}

TEST_CASE("squared-error map: identity, constant offset, oracle agreement") {
  const LdrImage a = constant_ldr(3, 3, 0.6);
  const LdrImage b = constant_ldr(3, 3, 0.5);

  for (double v : local_map_sqerr(a, a).values) {
    CHECK(v == 0.0);
  }
  for (double v : local_map_sqerr(a, b).values) {
    CHECK(v == doctest::Approx(-0.01).epsilon(1e-12));
  }

  const LdrImage x = testutil::random_ldr(8, 8, 200);
  const LdrImage y = testutil::random_ldr(8, 8, 201);
  const QualityMap map = local_map_sqerr(x, y);
  for (int yy = 0; yy < 8; ++yy) {
    for (int xx = 0; xx < 8; ++xx) {
      CHECK(map.at(xx, yy) ==
            doctest::Approx(testutil::oracle_sqerr_value(x, y, xx, yy))
                .epsilon(1e-15));
      CHECK(map.at(xx, yy) <= 0.0);
    }
  }
}

TEST_CASE("ssim map is all ones on identical images") {
  const LdrImage x = testutil::random_ldr(16, 16, 300);
  const QualityMap map = local_map_ssim(x, x);
  CHECK(map.width == 6);
  CHECK(map.height == 6);
  for (double v : map.values) {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ssim on constant images matches the degenerate closed form") {
  const LdrImage a = constant_ldr(16, 16, 0.5);
  const LdrImage b = constant_ldr(16, 16, 0.6);
  const QualityMap map = local_map_ssim(a, b);

  // mu terms only; variance terms cancel through c2.
  const SsimParams p;
  const double expected =
      (2.0 * 0.5 * 0.6 + p.c1()) / (0.5 * 0.5 + 0.6 * 0.6 + p.c1());
  for (double v : map.values) {
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
  }
  // frozen from the scalar oracle
  CHECK(map.values[0] ==
        doctest::Approx(testutil::oracle_ssim_value(a, b, 0, 0)).epsilon(1e-12));
  CHECK(map.values[0] == doctest::Approx(0.9836092).epsilon(1e-6));
}

TEST_CASE("ssim map matches the direct 2-D oracle on random pairs") {
  const LdrImage x = testutil::random_ldr(16, 16, 301);
  const LdrImage y = testutil::random_ldr(16, 16, 302);
  const QualityMap map = local_map_ssim(x, y);
  for (int yy = 0; yy < map.height; ++yy) {
    for (int xx = 0; xx < map.width; ++xx) {
      const double oracle = testutil::oracle_ssim_value(x, y, xx, yy);
      CHECK(std::fabs(map.at(xx, yy) - oracle) <= 1e-9);
      CHECK(map.at(xx, yy) <= 1.0 + 1e-12);
      CHECK(map.at(xx, yy) >= -1.0 - 1e-12);
    }
  }
}

TEST_CASE("local maps are symmetric in their arguments") {
  const LdrImage x = testutil::random_ldr(16, 16, 303);
  const LdrImage y = testutil::random_ldr(16, 16, 304);
  CHECK(local_map_mae(x, y).values == local_map_mae(y, x).values);
  CHECK(local_map_sqerr(x, y).values == local_map_sqerr(y, x).values);
  const auto s1 = local_map_ssim(x, y).values;
  const auto s2 = local_map_ssim(y, x).values;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-14));
  }
}

TEST_CASE("ssim rejects images smaller than its window") {
  const LdrImage small = testutil::random_ldr(8, 8, 305);
  CHECK_THROWS_AS(local_map_ssim(small, small), ArgumentError);
  const LdrImage thin = testutil::random_ldr(32, 10, 306);
  CHECK_THROWS_AS(local_map_ssim(thin, thin), ArgumentError);
}

TEST_CASE("maps reject mismatched dimensions") {
  const LdrImage a = testutil::random_ldr(8, 8, 307);
  const LdrImage b = testutil::random_ldr(8, 9, 308);
  CHECK_THROWS_AS(local_map_mae(a, b), ArgumentError);
  CHECK_THROWS_AS(local_map_sqerr(a, b), ArgumentError);
  CHECK_THROWS_AS(local_map_ssim(a, b), ArgumentError);
}

TEST_CASE("finalize converts pooled negated mse to capped dB") {
  const BaseMetric psnr(MetricId::PsnrMse);
  CHECK(psnr.finalize(-0.01) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(psnr.finalize(0.0) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(psnr.finalize(-1e-13) == doctest::Approx(120.0).epsilon(1e-12));

  // monotone decreasing in weighted MSE
  double prev = psnr.finalize(-1e-6);
  for (double mse : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const double cur = psnr.finalize(-mse);
    CHECK(cur < prev);
    prev = cur;
  }

  const BaseMetric ssim(MetricId::Ssim);
  CHECK(ssim.finalize(0.9) == 0.9);
  const BaseMetric mae(MetricId::Mae);
  CHECK(mae.finalize(-0.123) == -0.123);
  CHECK(finalize_score(mae, -0.5) == -0.5);
}

TEST_CASE("metric names and reserved identifiers") {
  CHECK(BaseMetric::from_name("mae").id() == MetricId::Mae);
  CHECK(BaseMetric::from_name("psnr").id() == MetricId::PsnrMse);
  CHECK(BaseMetric::from_name("psnr-mse").id() == MetricId::PsnrMse);
  CHECK(BaseMetric::from_name("ssim").id() == MetricId::Ssim);
  CHECK(BaseMetric::from_name("ssim").crop_border() == 5);
  CHECK(BaseMetric::from_name("mae").crop_border() == 0);

  CHECK_THROWS_AS(BaseMetric::from_name("lpips"), UnsupportedMetricError);
  CHECK_THROWS_AS(BaseMetric::from_name("dists"), UnsupportedMetricError);
  CHECK_THROWS_AS(BaseMetric::from_name("vmaf"), ArgumentError);
}

}  // TEST_SUITE
