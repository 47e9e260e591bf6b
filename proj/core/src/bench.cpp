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

#include "hdriqa/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hdriqa/errors.hpp"
#include "hdriqa/imageio.hpp"
#include "hdriqa/optimize.hpp"
#include "parallel.hpp"

namespace hdriqa {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    fields.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    fields.push_back("");
  }
  return fields;
}

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [&](double x) { return x == v.front(); });
}

// Average ranks, 1-based; ties receive the mean of their positions.
// Returns whether any tie was present.
bool average_ranks(const std::vector<double>& v, std::vector<double>& ranks) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  ranks.assign(n, 0.0);
  bool ties = false;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) {
      ++j;
    }
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      ranks[order[t]] = rank;
    }
    ties = ties || (j > i);
    i = j + 1;
  }
  return ties;
}

}  // namespace

DatasetManifest read_manifest(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) {
    throw IoError("cannot open manifest: " + csv_path.string());
  }
  DatasetManifest manifest;
  manifest.name = csv_path.stem().string();
  manifest.base_dir = csv_path.parent_path();

  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const auto fields = split_csv_line(stripped);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "ref" || fields[1] != "test" ||
          fields[2] != "mos") {
        throw FormatError(csv_path.string() +
                          ": expected header 'ref,test,mos,format' on line " +
                          std::to_string(line_number));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 3 || fields.size() > 4) {
      throw FormatError(csv_path.string() + ": line " +
                        std::to_string(line_number) +
                        " has " + std::to_string(fields.size()) +
                        " fields (expected 3 or 4)");
    }
    ManifestEntry entry;
    entry.ref_path = fields[0];
    entry.test_path = fields[1];
    try {
      std::size_t used = 0;
      entry.mos = std::stod(fields[2], &used);
      if (used != fields[2].size() || !std::isfinite(entry.mos)) {
        throw std::invalid_argument(fields[2]);
      }
    } catch (const std::exception&) {
      throw FormatError(csv_path.string() + ": bad mos value '" + fields[2] +
                        "' on line " + std::to_string(line_number));
    }
    if (fields.size() == 4 && !fields[3].empty()) {
      entry.format_hint = fields[3];
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (!header_seen) {
    throw FormatError(csv_path.string() + ": empty manifest (no header)");
  }
  return manifest;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ArgumentError("correlation inputs must have equal length");
  }
  if (x.size() < 2) {
    throw UndefinedCorrelationError("correlation needs at least 2 samples");
  }
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("correlation of a constant vector");
  }
  return sxy / std::sqrt(sxx * syy);
}

double srcc(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ArgumentError("correlation inputs must have equal length");
  }
  if (x.size() < 2) {
    throw UndefinedCorrelationError("correlation needs at least 2 samples");
  }
  if (is_constant(x) || is_constant(y)) {
    throw UndefinedCorrelationError("correlation of a constant vector");
  }
  std::vector<double> rx, ry;
  const bool ties_x = average_ranks(x, rx);
  const bool ties_y = average_ranks(y, ry);
  if (!ties_x && !ties_y) {
    // Tie-free ranks are integers; the difference formula is then exact,
    // giving 1.0 and -1.0 without rounding residue.
    double d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double d = rx[i] - ry[i];
      d2 += d * d;
    }
    const double n = static_cast<double>(rx.size());
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  }
  return pearson(rx, ry);
}

double LogisticFit::evaluate(double q) const {
  const double t = std::clamp(beta[1] * (q - beta[2]), -500.0, 500.0);
  return beta[0] * (0.5 - 1.0 / (1.0 + std::exp(t))) + beta[3];
}

PlccResult plcc_logistic(const std::vector<double>& objective,
                         const std::vector<double>& mos) {
  if (objective.size() != mos.size()) {
    throw ArgumentError("correlation inputs must have equal length");
  }
  if (objective.size() < 5) {
    throw ArgumentError(
        "logistic fit needs at least 5 samples for 4 parameters");
  }
  if (is_constant(objective) || is_constant(mos)) {
    throw UndefinedCorrelationError("correlation of a constant vector");
  }

  const auto sse = [&](const std::vector<double>& beta) {
    LogisticFit f;
    std::copy_n(beta.begin(), 4, f.beta.begin());
    double acc = 0.0;
    for (std::size_t i = 0; i < objective.size(); ++i) {
      const double r = f.evaluate(objective[i]) - mos[i];
      acc += r * r;
    }
    return std::isfinite(acc) ? acc
                              : std::numeric_limits<double>::max();
  };

  // Quantile-seeded deterministic starts.
  std::vector<double> sorted = objective;
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (pos - lo) * (sorted[lo + 1] - sorted[lo]);
  };
  const double q25 = quantile(0.25);
  const double q50 = quantile(0.50);
  const double q75 = quantile(0.75);
  const double mean_q =
      std::accumulate(objective.begin(), objective.end(), 0.0) /
      static_cast<double>(objective.size());
  const double mean_m = std::accumulate(mos.begin(), mos.end(), 0.0) /
                        static_cast<double>(mos.size());
  const auto [mos_min, mos_max] = std::minmax_element(mos.begin(), mos.end());
  double spread = *mos_max - *mos_min;
  double iqr = q75 - q25;
  if (iqr <= 0.0) {
    iqr = std::max(sorted.back() - sorted.front(), 1e-12);
  }
  double corr_sign = 0.0;
  for (std::size_t i = 0; i < objective.size(); ++i) {
    corr_sign += (objective[i] - mean_q) * (mos[i] - mean_m);
  }
  const double sign = corr_sign < 0.0 ? -1.0 : 1.0;

  bool any_converged = false;
  double best_sse = std::numeric_limits<double>::max();
  std::vector<double> best_beta;
  for (const double amp_scale : {1.0, 2.0}) {
    for (const double slope : {1.0, 4.0}) {
      for (const double center : {q50, mean_q}) {
        const std::vector<double> start = {sign * spread * amp_scale,
                                           slope / iqr, center, mean_m};
        std::vector<double> steps(4);
        for (int i = 0; i < 4; ++i) {
          steps[i] = 0.1 * std::fabs(start[i]) + 1e-3;
        }
        const auto res = nelder_mead_minimize(sse, start, steps, 2000,
                                              1e-12 * (1.0 + sse(start)));
        any_converged = any_converged || res.converged;
        if (res.value < best_sse) {
          best_sse = res.value;
          best_beta = res.x;
        }
      }
    }
  }
  if (best_beta.empty() || !std::isfinite(best_sse)) {
    throw FitFailureError("logistic fit diverged from every start", best_sse);
  }
  (void)any_converged;  // iteration-capped fits still count via best residual

  PlccResult result;
  std::copy_n(best_beta.begin(), 4, result.fit.beta.begin());
  result.fit.residual = best_sse;
  // The four-parameter logistic is monotone in q; direction is the sign of
  // beta1 * beta2.
  result.fit.increasing = result.fit.beta[0] * result.fit.beta[1] > 0.0;

  std::vector<double> fitted(objective.size());
  for (std::size_t i = 0; i < objective.size(); ++i) {
    fitted[i] = result.fit.evaluate(objective[i]);
  }
  result.plcc = pearson(fitted, mos);
  return result;
}

namespace {

bool looks_like_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file for reading: " + path.string());
  }
  static const unsigned char kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A,
                                        '\n'};
  unsigned char buf[8] = {};
  in.read(reinterpret_cast<char*>(buf), 8);
  return in.gcount() == 8 && std::equal(std::begin(kSig), std::end(kSig), buf);
}

enum class Route { Hdr, Ldr };

Route route_for(const std::filesystem::path& path, const std::string& hint,
                std::optional<HdrFormat>& format_out) {
  if (hint == "png" || hint == "ldr") {
    return Route::Ldr;
  }
  if (hint == "rgbe" || hint == "hdr") {
    format_out = HdrFormat::RadianceRgbe;
    return Route::Hdr;
  }
  if (hint == "pfm") {
    format_out = HdrFormat::Pfm;
    return Route::Hdr;
  }
  if (hint != "auto") {
    throw ArgumentError("unknown format hint '" + hint + "'");
  }
  if (looks_like_png(path)) {
    return Route::Ldr;
  }
  const auto detected = detect_hdr_format(path);
  if (!detected) {
    throw FormatError(path.string() + ": unrecognized image format");
  }
  format_out = detected;
  return Route::Hdr;
}

double score_entry(const DatasetManifest& manifest, const ManifestEntry& entry,
                   const BaseMetric& metric, const CompensationConfig& comp,
                   const DisplayModel& model, const AggregationConfig& agg,
                   double epsilon, std::string& routed) {
  const auto ref_path = manifest.base_dir / entry.ref_path;
  const auto test_path = manifest.base_dir / entry.test_path;
  std::optional<HdrFormat> ref_format, test_format;
  const Route ref_route = route_for(ref_path, entry.format_hint, ref_format);
  const Route test_route = route_for(test_path, entry.format_hint, test_format);
  if (ref_route != test_route) {
    throw ArgumentError("mixed HDR/LDR pairing is unsupported: " +
                        entry.ref_path + " vs " + entry.test_path);
  }
  if (ref_route == Route::Ldr) {
    routed = "ldr";
    const LdrImage ref = read_ldr(ref_path);
    const LdrImage test = read_ldr(test_path);
    return score_ldr(ref, test, metric, model).score;
  }
  routed = "hdr";
  const HdrImage ref = ref_format ? read_hdr(ref_path, *ref_format)
                                  : read_hdr(ref_path);
  const HdrImage test = test_format ? read_hdr(test_path, *test_format)
                                    : read_hdr(test_path);
  return score_hdr(ref, test, metric, model, comp, agg, epsilon).score;
}

}  // namespace

BenchmarkReport run_benchmark(const DatasetManifest& manifest,
                              const BaseMetric& metric,
                              const CompensationConfig& comp,
                              const DisplayModel& model,
                              const AggregationConfig& agg, double epsilon) {
  if (manifest.entries.size() < 2) {
    throw ArgumentError("manifest needs at least 2 entries, has " +
                        std::to_string(manifest.entries.size()));
  }
  comp.validate();
  model.validate();

  BenchmarkReport report;
  report.dataset = manifest.name;
  report.metric = metric.name();
  report.compensation = compensation_mode_name(comp.mode);
  report.entries.resize(manifest.entries.size());

  detail::parallel_for_index(manifest.entries.size(), [&](std::size_t i) {
    BenchmarkEntryResult& result = report.entries[i];
    result.entry = manifest.entries[i];
    try {
      result.score = score_entry(manifest, manifest.entries[i], metric, comp,
                                 model, agg, epsilon, result.routed);
      result.ok = true;
    } catch (const std::exception& e) {
      result.ok = false;
      result.error = e.what();
    }
  });

  std::vector<double> scores, mos;
  for (const auto& r : report.entries) {
    if (r.ok) {
      scores.push_back(r.score);
      mos.push_back(r.entry.mos);
      ++report.scored;
    } else {
      ++report.failed;
    }
  }

  if (report.scored < 2) {
    report.correlation_note = "fewer than 2 entries scored";
    return report;
  }
  try {
    report.srcc = srcc(scores, mos);
  } catch (const NumericalError& e) {
    report.correlation_note = e.what();
  }
  try {
    const PlccResult plcc = plcc_logistic(scores, mos);
    report.plcc = plcc.plcc;
    report.fit = plcc.fit;
  } catch (const Error& e) {
    if (report.correlation_note.empty()) {
      report.correlation_note = e.what();
    }
  }
  return report;
}

std::string BenchmarkReport::to_json(int indent) const {
  nlohmann::json doc;
  doc["dataset"] = dataset;
  doc["metric"] = metric;
  doc["compensation"] = compensation;
  doc["scored"] = scored;
  doc["failed"] = failed;
  doc["srcc"] = srcc.has_value() ? nlohmann::json(*srcc) : nlohmann::json();
  doc["plcc"] = plcc.has_value() ? nlohmann::json(*plcc) : nlohmann::json();
  if (fit.has_value()) {
    doc["logistic_fit"] = {{"beta", fit->beta},
                           {"residual", fit->residual},
                           {"increasing", fit->increasing}};
  } else {
    doc["logistic_fit"] = nullptr;
  }
  if (!correlation_note.empty()) {
    doc["correlation_note"] = correlation_note;
  }
  doc["entries"] = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& r : entries) {
    nlohmann::json e;
    e["ref"] = r.entry.ref_path;
    e["test"] = r.entry.test_path;
    e["mos"] = r.entry.mos;
    e["ok"] = r.ok;
    if (r.ok) {
      e["score"] = r.score;
      e["routed"] = r.routed;
    } else {
      e["error"] = r.error;
      failures.push_back({{"ref", r.entry.ref_path},
                          {"test", r.entry.test_path},
                          {"error", r.error}});
    }
    doc["entries"].push_back(std::move(e));
  }
  doc["failures"] = std::move(failures);
  return doc.dump(indent);
}

}  // namespace hdriqa
