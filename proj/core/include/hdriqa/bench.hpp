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

#ifndef HDRIQA_BENCH_HPP_
#define HDRIQA_BENCH_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdriqa/compensate.hpp"

namespace hdriqa {

struct ManifestEntry {
  std::string ref_path;   // relative to the manifest directory
  std::string test_path;  // relative to the manifest directory
  double mos = 0.0;
  std::string format_hint = "auto";  // auto | hdr | rgbe | pfm | png | ldr
};

struct DatasetManifest {
  std::string name;
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
};

/// Parses a CSV manifest with header "ref,test,mos,format". Paths resolve
/// against the manifest's directory; an empty format cell means auto.
DatasetManifest read_manifest(const std::filesystem::path& csv_path);

/// Spearman's rank correlation: Pearson correlation of average ranks, ties
/// receiving their mean rank. Constant inputs raise
/// UndefinedCorrelationError.
double srcc(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson linear correlation. Constant inputs raise
/// UndefinedCorrelationError.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct LogisticFit {
  std::array<double, 4> beta{};  // f(q) = b1*(1/2 - 1/(1+exp(b2*(q-b3)))) + b4
  double residual = 0.0;         // sum of squared errors
  bool increasing = false;       // fitted curve direction over q

  double evaluate(double q) const;
};

struct PlccResult {
  double plcc = 0.0;
  LogisticFit fit;
};

/// Fits the four-parameter logistic by Nelder-Mead least squares from
/// eight quantile-seeded starts, then correlates the fitted values with
/// mos. Needs at least 5 samples and non-constant inputs.
PlccResult plcc_logistic(const std::vector<double>& objective,
                         const std::vector<double>& mos);

struct BenchmarkEntryResult {
  ManifestEntry entry;
  bool ok = false;
  double score = 0.0;
  std::string routed;  // "hdr" or "ldr"
  std::string error;   // set when ok is false
};

struct BenchmarkReport {
  std::string dataset;
  std::string metric;
  std::string compensation;
  std::vector<BenchmarkEntryResult> entries;
  int scored = 0;
  int failed = 0;
  std::optional<double> srcc;
  std::optional<double> plcc;
  std::optional<LogisticFit> fit;
  std::string correlation_note;  // why correlations are absent, if they are

  std::string to_json(int indent = 2) const;
};

/// Scores every manifest pair, then correlates scores with MOS. Per-entry
/// failures are recorded and excluded; correlations are omitted (with a
/// note) when fewer than two entries score or the inputs are degenerate.
BenchmarkReport run_benchmark(const DatasetManifest& manifest,
                              const BaseMetric& metric,
                              const CompensationConfig& comp = {},
                              const DisplayModel& model = {},
                              const AggregationConfig& agg = {},
                              double epsilon = kDefaultExposednessEpsilon);

}  // namespace hdriqa

#endif  // HDRIQA_BENCH_HPP_
