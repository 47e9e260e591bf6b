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
#include <fstream>
#include <json.hpp>
#include <random>

#include "hdriqa/bench.hpp"
#include "hdriqa/errors.hpp"
#include "hdriqa/imageio.hpp"
#include "testutil.hpp"

using namespace hdriqa;
using testutil::TempDir;

namespace {

// Count-based average ranks, independent of the library's sort-based path.
std::vector<double> oracle_ranks(const std::vector<double>& v) {
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int smaller = 0;
    int equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      smaller += v[j] < v[i];
      equal += v[j] == v[i];
    }
    ranks[i] = smaller + 0.5 * (equal - 1) + 1.0;
  }
  return ranks;
}

double oracle_pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::string>& lines) {
  std::ofstream out(path);
  out << "ref,test,mos,format\n";
  for (const auto& line : lines) {
    out << line << "\n";
  }
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("srcc on exact monotone and reversed sequences") {
  CHECK(srcc({1.0, 2.0, 3.0}, {10.0, 20.0, 30.0}) == 1.0);
  CHECK(srcc({1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}) == -1.0);
}

TEST_CASE("srcc hand-computed example with one swap") {
  const double r = srcc({1.0, 2.0, 3.0, 4.0}, {1.0, 3.0, 2.0, 4.0});
  CHECK(r == doctest::Approx(0.8).epsilon(1e-15));

  // exhaustive rank oracle
  const auto rx = oracle_ranks({1.0, 2.0, 3.0, 4.0});
  const auto ry = oracle_ranks({1.0, 3.0, 2.0, 4.0});
  CHECK(r == doctest::Approx(oracle_pearson(rx, ry)).epsilon(1e-12));
}

TEST_CASE("srcc with ties matches the rank oracle") {
  const std::vector<double> x = {1.0, 1.0, 2.0, 3.0, 3.0, 3.0};
  const std::vector<double> y = {2.0, 1.0, 5.0, 4.0, 4.0, 6.0};
  const double expected = oracle_pearson(oracle_ranks(x), oracle_ranks(y));
  CHECK(srcc(x, y) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("srcc error contracts") {
  CHECK_THROWS_AS(srcc({1.0, 2.0}, {1.0}), ArgumentError);
  CHECK_THROWS_AS(srcc({1.0}, {1.0}), UndefinedCorrelationError);
  CHECK_THROWS_AS(srcc({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}),
                  UndefinedCorrelationError);
}

TEST_CASE("srcc is invariant under strictly increasing transforms") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> x(25), y(25);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = dist(rng);
    y[i] = dist(rng);
  }
  const double base = srcc(x, y);
  std::vector<double> ex(x.size()), cy(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    ex[i] = std::exp(x[i]);
    cy[i] = y[i] * y[i] * y[i] + 5.0 * y[i];
  }
  CHECK(srcc(ex, y) == base);
  CHECK(srcc(x, cy) == base);
}

TEST_CASE("logistic fit recovers a realizable model") {
  LogisticFit truth;
  truth.beta = {2.0, 1.5, 0.3, 1.0};
  std::vector<double> q(40), mos(40);
  for (int i = 0; i < 40; ++i) {
    q[i] = -2.0 + 4.0 * i / 39.0;
    mos[i] = truth.evaluate(q[i]);
  }
  const PlccResult result = plcc_logistic(q, mos);
  CHECK(result.plcc == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.fit.residual <= 1e-8);
  CHECK(result.fit.increasing);
}

TEST_CASE("logistic fit error contracts") {
  CHECK_THROWS_AS(plcc_logistic({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0}),
                  ArgumentError);  // too short
  const std::vector<double> constant(6, 3.0);
  const std::vector<double> varied = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  CHECK_THROWS_AS(plcc_logistic(constant, varied), UndefinedCorrelationError);
  CHECK_THROWS_AS(plcc_logistic(varied, constant), UndefinedCorrelationError);
}

TEST_CASE("plcc is invariant under positive affine rescaling of scores") {
  std::mt19937 rng(17);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> q(30), mos(30);
  LogisticFit truth;
  truth.beta = {-3.0, 2.0, 0.5, 2.0};  // decreasing in q
  for (int i = 0; i < 30; ++i) {
    q[i] = -1.0 + 2.0 * i / 29.0;
    mos[i] = truth.evaluate(q[i]) + noise(rng);
  }
  const PlccResult base = plcc_logistic(q, mos);

  std::vector<double> scaled(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    scaled[i] = 2.5 * q[i] - 7.0;
  }
  const PlccResult transformed = plcc_logistic(scaled, mos);
  CHECK(std::fabs(base.fit.residual - transformed.fit.residual) <= 1e-8);
  CHECK(std::fabs(base.plcc - transformed.plcc) <= 1e-8);
  CHECK_FALSE(base.fit.increasing);
}

TEST_CASE("noisy linear mos keeps plcc above 0.999") {
  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> q(30), mos(30);
  for (int i = 0; i < 30; ++i) {
    q[i] = i / 29.0;
    mos[i] = 2.0 * q[i] + noise(rng);
  }
  const PlccResult result = plcc_logistic(q, mos);
  CHECK(result.plcc >= 0.999);
  // regression anchor for this seed
  CHECK(result.plcc == doctest::Approx(0.999895307895).epsilon(1e-9));
}

TEST_CASE("manifest parsing resolves paths and hints") {
  TempDir dir;
  write_manifest(dir.file("set.csv"), {
                                          "a.pfm,b.pfm,3.5,pfm",
                                          "c.hdr,d.hdr,1.25,",
                                          "e.png,f.png,2.0,png",
                                      });
  const DatasetManifest m = read_manifest(dir.file("set.csv"));
  CHECK(m.name == "set");
  CHECK(m.base_dir == dir.path());
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0].format_hint == "pfm");
  CHECK(m.entries[1].format_hint == "auto");
  CHECK(m.entries[1].mos == 1.25);
  CHECK(m.entries[2].format_hint == "png");
}

TEST_CASE("manifest accepts CRLF line endings and padding") {
  TempDir dir;
  std::ofstream out(dir.file("crlf.csv"), std::ios::binary);
  out << "ref,test,mos,format\r\n"
      << " a.pfm , b.pfm , 2.5 , pfm \r\n"
      << "\r\n"
      << "c.pfm,d.pfm,1.5,\r\n";
  out.close();
  const DatasetManifest m = read_manifest(dir.file("crlf.csv"));
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].ref_path == "a.pfm");
  CHECK(m.entries[0].mos == 2.5);
  CHECK(m.entries[0].format_hint == "pfm");
  CHECK(m.entries[1].format_hint == "auto");
}

TEST_CASE("manifest format errors") {
  TempDir dir;
  std::ofstream(dir.file("bad_header.csv")) << "foo,bar\n";
  CHECK_THROWS_AS(read_manifest(dir.file("bad_header.csv")), FormatError);

  std::ofstream(dir.file("bad_mos.csv")) << "ref,test,mos,format\na,b,xx,\n";
  CHECK_THROWS_AS(read_manifest(dir.file("bad_mos.csv")), FormatError);

  std::ofstream(dir.file("empty.csv")) << "";
  CHECK_THROWS_AS(read_manifest(dir.file("empty.csv")), FormatError);

  CHECK_THROWS_AS(read_manifest(dir.file("missing.csv")), IoError);
}

TEST_CASE("run_benchmark scores a distortion series with perfect rank order") {
  TempDir dir;
  DisplayModel model;
  const HdrImage ref = testutil::random_hdr(32, 32, 6.0, 400);
  write_hdr(ref, dir.file("ref.pfm"), HdrFormat::Pfm);

  std::vector<std::string> lines;
  for (int level = 0; level < 8; ++level) {
    const double sigma = 0.005 * std::pow(1.6, level);
    const HdrImage test = testutil::noisy_copy(ref, sigma, 500 + level);
    const std::string name = "t" + std::to_string(level) + ".pfm";
    write_hdr(test, dir.file(name), HdrFormat::Pfm);
    lines.push_back("ref.pfm," + name + "," + std::to_string(100.0 - level) +
                    ",pfm");
  }
  write_manifest(dir.file("noise.csv"), lines);

  const DatasetManifest manifest = read_manifest(dir.file("noise.csv"));
  const BenchmarkReport report =
      run_benchmark(manifest, BaseMetric(MetricId::Mae));
  CHECK(report.scored == 8);
  CHECK(report.failed == 0);
  REQUIRE(report.srcc.has_value());
  CHECK(*report.srcc == 1.0);
  REQUIRE(report.plcc.has_value());
  CHECK(*report.plcc >= 0.9);

  const auto doc = nlohmann::json::parse(report.to_json());
  CHECK(doc["srcc"].get<double>() == 1.0);
  CHECK(doc["entries"].size() == 8);
  CHECK(doc["failures"].empty());
}

TEST_CASE("run_benchmark records and excludes failing entries") {
  TempDir dir;
  const HdrImage ref = testutil::random_hdr(16, 16, 4.0, 401);
  write_hdr(ref, dir.file("ref.pfm"), HdrFormat::Pfm);
  const HdrImage t1 = testutil::noisy_copy(ref, 0.01, 402);
  const HdrImage t2 = testutil::noisy_copy(ref, 0.05, 403);
  write_hdr(t1, dir.file("t1.pfm"), HdrFormat::Pfm);
  write_hdr(t2, dir.file("t2.pfm"), HdrFormat::Pfm);
  write_ldr(testutil::random_ldr(16, 16, 404), dir.file("ldr.png"));

  write_manifest(dir.file("mixed.csv"), {
                                            "ref.pfm,t1.pfm,5.0,pfm",
                                            "ref.pfm,t2.pfm,3.0,pfm",
                                            "ref.pfm,missing.pfm,2.0,pfm",
                                            "ref.pfm,ldr.png,1.0,",
                                        });
  const DatasetManifest manifest = read_manifest(dir.file("mixed.csv"));
  const BenchmarkReport report =
      run_benchmark(manifest, BaseMetric(MetricId::Mae));
  CHECK(report.scored == 2);
  CHECK(report.failed == 2);
  CHECK_FALSE(report.entries[2].ok);
  CHECK_FALSE(report.entries[3].ok);  // mixed HDR/LDR pairing
  CHECK(report.entries[3].error.find("mixed") != std::string::npos);
}

TEST_CASE("identical pairs leave correlations undefined but reported") {
  TempDir dir;
  const HdrImage ref = testutil::random_hdr(16, 16, 4.0, 405);
  write_hdr(ref, dir.file("ref.pfm"), HdrFormat::Pfm);
  write_manifest(dir.file("same.csv"), {
                                           "ref.pfm,ref.pfm,5.0,pfm",
                                           "ref.pfm,ref.pfm,4.0,pfm",
                                           "ref.pfm,ref.pfm,3.0,pfm",
                                       });
  const DatasetManifest manifest = read_manifest(dir.file("same.csv"));
  const BenchmarkReport report =
      run_benchmark(manifest, BaseMetric(MetricId::Mae));
  CHECK(report.scored == 3);
  for (const auto& e : report.entries) {
    CHECK(e.score == 0.0);
  }
  CHECK_FALSE(report.srcc.has_value());
  CHECK_FALSE(report.plcc.has_value());
  CHECK(!report.correlation_note.empty());
}

TEST_CASE("ldr-routed entries go through the reduction pathway") {
  TempDir dir;
  const LdrImage ref = testutil::random_ldr(24, 24, 406);
  const LdrImage test = testutil::random_ldr(24, 24, 407);
  write_ldr(ref, dir.file("ref.png"));
  write_ldr(test, dir.file("t1.png"));
  write_ldr(ref, dir.file("t2.png"));
  write_manifest(dir.file("ldr.csv"), {
                                          "ref.png,t1.png,1.0,",
                                          "ref.png,t2.png,5.0,",
                                      });
  const DatasetManifest manifest = read_manifest(dir.file("ldr.csv"));
  const BenchmarkReport report =
      run_benchmark(manifest, BaseMetric(MetricId::Mae));
  CHECK(report.scored == 2);
  CHECK(report.entries[0].routed == "ldr");
  CHECK(report.entries[1].score == 0.0);  // identical after quantization
}

TEST_CASE("benchmarks need at least two entries") {
  TempDir dir;
  const HdrImage ref = testutil::random_hdr(8, 8, 3.0, 408);
  write_hdr(ref, dir.file("ref.pfm"), HdrFormat::Pfm);
  write_manifest(dir.file("one.csv"), {"ref.pfm,ref.pfm,1.0,pfm"});
  const DatasetManifest manifest = read_manifest(dir.file("one.csv"));
  CHECK_THROWS_AS(run_benchmark(manifest, BaseMetric(MetricId::Mae)),
                  ArgumentError);
}

}  // TEST_SUITE
