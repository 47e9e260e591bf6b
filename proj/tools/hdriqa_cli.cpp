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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdriqa/bench.hpp"
#include "hdriqa/compensate.hpp"
#include "hdriqa/errors.hpp"
#include "hdriqa/imageio.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitFormat = 3;
constexpr int kExitNumerical = 4;

struct CommonOptions {
  hdriqa::DisplayModel display;
  std::string metric = "ssim";
  std::string compensate = "none";
  double epsilon = hdriqa::kDefaultExposednessEpsilon;
  std::string global_weights;  // comma-separated, empty = uniform
  double search_halfwidth = 4.0;
  double tolerance = 1e-4;
  int max_evals = 200;
  std::string format = "auto";  // auto | rgbe | pfm | png
  std::string output;           // empty = stdout
  bool verbose = false;
};

void add_display_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--gamma", opt.display.gamma,
                  "Display gamma exponent")
      ->capture_default_str();
  cmd->add_option("--black-level", opt.display.black_level,
                  "Display black-level fraction b")
      ->capture_default_str();
  cmd->add_option("--lmin", opt.display.l_min,
                  "Display minimum luminance, cd/m^2")
      ->capture_default_str();
  cmd->add_option("--lmax", opt.display.l_max,
                  "Display maximum luminance, cd/m^2")
      ->capture_default_str();
}

void add_scoring_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--metric", opt.metric, "Base LDR metric")
      ->check(CLI::IsMember({"mae", "psnr", "ssim"}))
      ->capture_default_str();
  cmd->add_option("--compensate", opt.compensate,
                  "Luminance-shift compensation mode")
      ->check(CLI::IsMember({"none", "optimize", "paired"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", opt.epsilon,
                  "Well-exposedness floor weight")
      ->capture_default_str();
  cmd->add_option("--global-weights", opt.global_weights,
                  "Comma-separated per-window weights summing to 1 "
                  "(default: uniform)");
  cmd->add_option("--search-halfwidth", opt.search_halfwidth,
                  "Exposure search half-width in stops")
      ->capture_default_str();
  cmd->add_option("--tol", opt.tolerance,
                  "Exposure search tolerance in stops")
      ->capture_default_str();
  cmd->add_option("--max-evals", opt.max_evals,
                  "Objective evaluation budget per window")
      ->capture_default_str();
}

hdriqa::AggregationConfig parse_global_weights(const std::string& csv) {
  if (csv.empty()) {
    return hdriqa::AggregationConfig::uniform();
  }
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw hdriqa::ArgumentError("bad global weight '" + field + "'");
    }
  }
  return hdriqa::AggregationConfig::from_values(values);
}

hdriqa::CompensationConfig make_comp_config(const CommonOptions& opt) {
  hdriqa::CompensationConfig comp;
  comp.mode = hdriqa::compensation_mode_from_name(opt.compensate);
  comp.search_halfwidth = opt.search_halfwidth;
  comp.tolerance = opt.tolerance;
  comp.max_evals = opt.max_evals;
  return comp;
}

json config_echo(const CommonOptions& opt) {
  json cfg;
  cfg["compensate"] = opt.compensate;
  cfg["gamma"] = opt.display.gamma;
  cfg["black_level"] = opt.display.black_level;
  cfg["l_min"] = opt.display.l_min;
  cfg["l_max"] = opt.display.l_max;
  cfg["epsilon"] = opt.epsilon;
  cfg["search_halfwidth"] = opt.search_halfwidth;
  cfg["tol"] = opt.tolerance;
  cfg["max_evals"] = opt.max_evals;
  cfg["global_weights"] =
      opt.global_weights.empty() ? "uniform" : opt.global_weights;
  return cfg;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw hdriqa::IoError("cannot open output file: " + output_path);
  }
  out << text << "\n";
}

enum class PairKind { Hdr, Ldr };

PairKind classify(const fs::path& path, const std::string& format,
                  std::optional<hdriqa::HdrFormat>& hdr_format) {
  if (format == "png") {
    return PairKind::Ldr;
  }
  if (format == "rgbe") {
    hdr_format = hdriqa::HdrFormat::RadianceRgbe;
    return PairKind::Hdr;
  }
  if (format == "pfm") {
    hdr_format = hdriqa::HdrFormat::Pfm;
    return PairKind::Hdr;
  }
  // auto: sniff magic bytes
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw hdriqa::IoError("cannot open file for reading: " + path.string());
  }
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), 8);
  static const unsigned char kPng[8] = {0x89, 'P', 'N', 'G',
                                        '\r', '\n', 0x1A, '\n'};
  if (in.gcount() == 8 && std::equal(std::begin(kPng), std::end(kPng), sig)) {
    return PairKind::Ldr;
  }
  const auto detected = hdriqa::detect_hdr_format(path);
  if (!detected) {
    throw hdriqa::FormatError(path.string() + ": unrecognized image format");
  }
  hdr_format = detected;
  return PairKind::Hdr;
}

int cmd_score(const std::string& ref_path, const std::string& test_path,
              const CommonOptions& opt) {
  const hdriqa::BaseMetric metric = hdriqa::BaseMetric::from_name(opt.metric);
  const auto agg = parse_global_weights(opt.global_weights);
  const auto comp = make_comp_config(opt);

  std::optional<hdriqa::HdrFormat> ref_format, test_format;
  const PairKind ref_kind = classify(ref_path, opt.format, ref_format);
  const PairKind test_kind = classify(test_path, opt.format, test_format);
  if (ref_kind != test_kind) {
    throw hdriqa::ArgumentError(
        "mixed HDR/LDR pairing is unsupported; convert one side first");
  }

  hdriqa::QualityReport report;
  std::string routed;
  if (ref_kind == PairKind::Ldr) {
    routed = "ldr";
    const auto ref = hdriqa::read_ldr(ref_path);
    const auto test = hdriqa::read_ldr(test_path);
    report = hdriqa::score_ldr(ref, test, metric, opt.display);
  } else {
    routed = "hdr";
    const auto ref = ref_format ? hdriqa::read_hdr(ref_path, *ref_format)
                                : hdriqa::read_hdr(ref_path);
    const auto test = test_format ? hdriqa::read_hdr(test_path, *test_format)
                                  : hdriqa::read_hdr(test_path);
    report = hdriqa::score_hdr(ref, test, metric, opt.display, comp, agg,
                               opt.epsilon);
  }

  json doc;
  doc["metric"] = report.metric;
  doc["Q"] = report.score;
  doc["aggregate_pooled"] = report.aggregate_pooled;
  doc["per_window"] = json::array();
  for (const auto& w : report.windows) {
    doc["per_window"].push_back({{"k", w.index},
                                 {"v", w.exposure},
                                 {"v_hat", w.optimized_exposure},
                                 {"Q_k", w.pooled}});
  }
  doc["config"] = config_echo(opt);
  doc["input"] = {{"ref", ref_path}, {"test", test_path}, {"routed", routed}};
  doc["plan"] = {{"l0", report.plan.l0},
                 {"l1", report.plan.l1},
                 {"count", report.plan.count()},
                 {"endpoints", report.plan.endpoints}};
  emit(doc.dump(2), opt.output);

  if (opt.verbose) {
    std::cerr << report.metric << " " << (routed == "ldr" ? "LDR" : "HDR")
              << " score: " << report.score << " over "
              << report.windows.size() << " window(s), mode "
              << hdriqa::compensation_mode_name(report.mode) << "\n";
  }
  return kExitOk;
}

int cmd_stack(const std::string& hdr_path, const std::string& out_dir,
              const CommonOptions& opt) {
  std::optional<hdriqa::HdrFormat> format;
  if (classify(hdr_path, opt.format, format) == PairKind::Ldr) {
    throw hdriqa::ArgumentError("stack expects an HDR input, got a PNG");
  }
  const auto hdr = format ? hdriqa::read_hdr(hdr_path, *format)
                          : hdriqa::read_hdr(hdr_path);
  const auto plan = hdriqa::plan_windows(hdr, opt.display);
  const auto stack = hdriqa::decompose(hdr, plan, opt.display);

  fs::create_directories(out_dir);
  json sidecar;
  sidecar["input"] = hdr_path;
  sidecar["l0"] = plan.l0;
  sidecar["l1"] = plan.l1;
  sidecar["count"] = plan.count();
  sidecar["endpoints"] = plan.endpoints;
  sidecar["exposures"] = plan.exposures;
  sidecar["display"] = {{"gamma", opt.display.gamma},
                        {"black_level", opt.display.black_level},
                        {"l_min", opt.display.l_min},
                        {"l_max", opt.display.l_max}};
  sidecar["files"] = json::array();

  for (int k = 0; k < stack.count(); ++k) {
    char gain[32];
    std::snprintf(gain, sizeof(gain), "%.6g", plan.exposures[k]);
    const std::string name =
        "stack_k" + std::to_string(k + 1) + "_v" + gain + ".png";
    hdriqa::write_ldr(stack.images[k], fs::path(out_dir) / name);
    sidecar["files"].push_back(name);
  }

  std::ofstream sidecar_out(fs::path(out_dir) / "plan.json");
  if (!sidecar_out) {
    throw hdriqa::IoError("cannot write plan.json in " + out_dir);
  }
  sidecar_out << sidecar.dump(2) << "\n";

  if (opt.verbose) {
    std::cerr << "wrote " << stack.count() << " exposure(s) to " << out_dir
              << " covering [" << plan.l0 << ", " << plan.l1 << "] stops\n";
  }
  return kExitOk;
}

int cmd_benchmark(const std::string& manifest_path, const CommonOptions& opt) {
  const hdriqa::BaseMetric metric = hdriqa::BaseMetric::from_name(opt.metric);
  const auto agg = parse_global_weights(opt.global_weights);
  const auto comp = make_comp_config(opt);

  const auto manifest = hdriqa::read_manifest(manifest_path);
  const auto report = hdriqa::run_benchmark(manifest, metric, comp,
                                            opt.display, agg, opt.epsilon);
  emit(report.to_json(2), opt.output);

  if (opt.verbose) {
    std::cerr << "scored " << report.scored << "/" << report.entries.size()
              << " entries";
    if (report.srcc) std::cerr << ", srcc " << *report.srcc;
    if (report.plcc) std::cerr << ", plcc " << *report.plcc;
    std::cerr << "\n";
  }
  for (const auto& e : report.entries) {
    if (!e.ok) {
      std::cerr << "warning: skipped " << e.entry.test_path << ": " << e.error
                << "\n";
    }
  }
  if (report.scored < 2) {
    std::cerr << "error: fewer than 2 entries scored\n";
    return kExitArgument;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hdriqa - full-reference HDR image quality via multi-exposure "
      "decomposition.\nSet HDRIQA_THREADS to cap worker threads."};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string ref_path, test_path, hdr_path, out_dir, manifest_path;

  CLI::App* score = app.add_subcommand(
      "score", "Score a test image against a reference (JSON to stdout)");
  score->add_option("ref", ref_path, "Reference image")->required();
  score->add_option("test", test_path, "Test image")->required();
  add_scoring_flags(score, opt);
  add_display_flags(score, opt);
  score->add_option("--format", opt.format,
                    "Input format override (applies to both files)")
      ->check(CLI::IsMember({"auto", "rgbe", "pfm", "png"}))
      ->capture_default_str();
  score->add_option("--output,-o", opt.output, "Write JSON here instead of stdout");
  score->add_flag("-v,--verbose", opt.verbose, "Human summary on stderr");

  CLI::App* stack = app.add_subcommand(
      "stack", "Export the multi-exposure LDR stack of an HDR image");
  stack->add_option("hdr", hdr_path, "HDR input image")->required();
  stack->add_option("out_dir", out_dir, "Output directory")->required();
  add_display_flags(stack, opt);
  stack->add_option("--format", opt.format, "Input format override")
      ->check(CLI::IsMember({"auto", "rgbe", "pfm"}))
      ->capture_default_str();
  stack->add_flag("-v,--verbose", opt.verbose, "Human summary on stderr");

  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "Score a CSV manifest and report SRCC/PLCC");
  benchmark->add_option("manifest", manifest_path, "CSV manifest path")
      ->required();
  add_scoring_flags(benchmark, opt);
  add_display_flags(benchmark, opt);
  benchmark->add_option("--output,-o", opt.output,
                        "Write JSON here instead of stdout");
  benchmark->add_flag("-v,--verbose", opt.verbose, "Human summary on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    if (score->parsed()) {
      return cmd_score(ref_path, test_path, opt);
    }
    if (stack->parsed()) {
      return cmd_stack(hdr_path, out_dir, opt);
    }
    return cmd_benchmark(manifest_path, opt);
  } catch (const hdriqa::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const hdriqa::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const hdriqa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const hdriqa::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
