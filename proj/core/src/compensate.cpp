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

#include "hdriqa/compensate.hpp"

#include <cmath>

#include "hdriqa/errors.hpp"
#include "hdriqa/optimize.hpp"
#include "parallel.hpp"

namespace hdriqa {

namespace {

// Pre-scan resolution across the search bracket. 33 points over +/-4 stops
// give quarter-stop spacing, and the center point is the start exposure.
constexpr int kPreScanPoints = 33;

double pooled_objective(const LdrImage& ref_ldr, const HdrImage& test_hdr,
                        double gain, const WeightField& weights, int k,
                        const BaseMetric& metric, const DisplayModel& model) {
  const LdrImage test_ldr = inverse_display(test_hdr, gain, model);
  const QualityMap map = metric.local_map(ref_ldr, test_ldr);
  return pool_exposure(map, weights, k);
}

}  // namespace

CompensationMode compensation_mode_from_name(std::string_view name) {
  if (name == "none") return CompensationMode::None;
  if (name == "optimize") return CompensationMode::Optimize;
  if (name == "paired") return CompensationMode::Paired;
  throw ArgumentError("unknown compensation mode '" + std::string(name) +
                      "' (expected none, optimize, or paired)");
}

std::string compensation_mode_name(CompensationMode mode) {
  switch (mode) {
    case CompensationMode::None:
      return "none";
    case CompensationMode::Optimize:
      return "optimize";
    case CompensationMode::Paired:
      return "paired";
  }
  return "?";
}

void CompensationConfig::validate() const {
  if (!(search_halfwidth > 0.0)) {
    throw ArgumentError("search halfwidth must be positive");
  }
  if (!(tolerance > 0.0)) {
    throw ArgumentError("search tolerance must be positive");
  }
  if (max_evals < 3) {
    throw ArgumentError("max_evals must be at least 3");
  }
}

WindowOptimum compensate_window(const LdrImage& ref_ldr,
                                const HdrImage& test_hdr, double exposure,
                                const WeightField& weights, int k,
                                const BaseMetric& metric,
                                const DisplayModel& model,
                                const CompensationConfig& config) {
  config.validate();
  if (!(exposure > 0.0) || !std::isfinite(exposure)) {
    throw ArgumentError("start exposure must be positive and finite");
  }

  const double x0 = std::log2(exposure);
  const double lo = x0 - config.search_halfwidth;
  const double hi = x0 + config.search_halfwidth;

  WindowOptimum result;
  double best_x = x0;
  auto eval = [&](double x) {
    const double q = pooled_objective(ref_ldr, test_hdr, std::exp2(x), weights,
                                      k, metric, model);
    if (!std::isfinite(q)) {
      throw NumericalError("non-finite pooled score at log2 exposure " +
                           std::to_string(x));
    }
    ++result.evaluations;
    if (result.evaluations == 1 || q > result.pooled) {
      result.pooled = q;
      best_x = x;
    }
    return q;
  };

  // Coarse scan; index center lands exactly on x0.
  const int points = std::min(kPreScanPoints, config.max_evals);
  const double step = (hi - lo) / (points - 1);
  int best_index = 0;
  double best_scan = 0.0;
  double start_value = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = (i == (points - 1) / 2) ? x0 : lo + i * step;
    const double q = eval(x);
    if (i == 0 || q > best_scan) {
      best_scan = q;
      best_index = i;
    }
    if (i == (points - 1) / 2) {
      start_value = q;
    }
  }
  result.pooled_at_start = start_value;

  // Golden-section refinement inside the winning sub-bracket.
  const double sub_lo = std::max(lo, lo + (best_index - 1) * step);
  const double sub_hi = std::min(hi, lo + (best_index + 1) * step);
  const int budget = config.max_evals - result.evaluations;
  if (budget >= 2 && sub_hi - sub_lo > config.tolerance) {
    golden_section_maximize([&](double x) { return eval(x); }, sub_lo, sub_hi,
                            config.tolerance, budget);
  }

  // Return the original gain bit-exactly when the start point won.
  result.exposure = (best_x == x0) ? exposure : std::exp2(best_x);
  return result;
}

namespace {

QualityReport score_with_plan(const HdrImage& ref, const HdrImage& test,
                              const WindowPlan& plan, const BaseMetric& metric,
                              const DisplayModel& model,
                              const CompensationConfig& comp,
                              const AggregationConfig& agg, double epsilon) {
  const ExposureStack ref_stack = decompose(ref, plan, model);
  const WeightField weights = well_exposedness(ref_stack, epsilon);
  const int count = plan.count();

  QualityReport report;
  report.metric = metric.name();
  report.mode = comp.mode;
  report.plan = plan;
  report.display = model;
  report.epsilon = epsilon;
  report.global_weights = agg.resolve(count);
  report.windows.resize(count);

  detail::parallel_for_index(static_cast<std::size_t>(count), [&](std::size_t k) {
    const double v = plan.exposures[k];
    WindowScore& w = report.windows[k];
    w.index = static_cast<int>(k) + 1;
    w.exposure = v;
    if (comp.mode == CompensationMode::Optimize) {
      const WindowOptimum opt =
          compensate_window(ref_stack.images[k], test, v, weights,
                            static_cast<int>(k), metric, model, comp);
      w.optimized_exposure = opt.exposure;
      w.pooled = opt.pooled;
      w.gain = opt.pooled - opt.pooled_at_start;
      w.evaluations = opt.evaluations;
    } else {
      w.optimized_exposure = v;
      w.pooled = pooled_objective(ref_stack.images[k], test, v, weights,
                                  static_cast<int>(k), metric, model);
      w.gain = 0.0;
      w.evaluations = 1;
    }
  });

  std::vector<double> per_exposure(count);
  for (int k = 0; k < count; ++k) {
    per_exposure[k] = report.windows[k].pooled;
  }
  report.aggregate_pooled = aggregate(per_exposure, agg);
  report.score = metric.finalize(report.aggregate_pooled);
  return report;
}

}  // namespace

CompensationResult compensation_summary(const QualityReport& report) {
  CompensationResult result;
  result.optimized_exposures.reserve(report.windows.size());
  result.per_window_gain.reserve(report.windows.size());
  for (const WindowScore& w : report.windows) {
    result.optimized_exposures.push_back(w.optimized_exposure);
    result.per_window_gain.push_back(w.gain);
    result.evaluations += w.evaluations;
  }
  return result;
}

QualityReport score_hdr(const HdrImage& ref, const HdrImage& test,
                        const BaseMetric& metric, const DisplayModel& model,
                        const CompensationConfig& comp,
                        const AggregationConfig& agg, double epsilon) {
  if (!same_dims(ref, test)) {
    throw ArgumentError("reference and test images must share dimensions");
  }
  ref.validate();
  test.validate();
  model.validate();
  comp.validate();
  const WindowPlan plan = plan_windows(ref, model);
  return score_with_plan(ref, test, plan, metric, model, comp, agg, epsilon);
}

QualityReport score_ldr(const LdrImage& ref, const LdrImage& test,
                        const BaseMetric& metric, const DisplayModel& model) {
  if (!same_dims(ref, test)) {
    throw ArgumentError("reference and test images must share dimensions");
  }
  ref.validate();
  test.validate();
  model.validate();

  const HdrImage ref_lin = forward_display(ref, model);
  const HdrImage test_lin = forward_display(test, model);

  // Single matched window: inverse_display at this gain undoes
  // forward_display, so the base metric sees the original pixels.
  WindowPlan plan;
  plan.source_width = ref.width();
  plan.source_height = ref.height();
  plan.l0 = std::log2(model.l_max * model.black_level);
  plan.l1 = std::log2(model.l_max);
  plan.endpoints = {std::log2(model.l_max)};
  plan.exposures = {std::exp2(-plan.endpoints[0])};

  CompensationConfig paired;
  paired.mode = CompensationMode::Paired;
  return score_with_plan(ref_lin, test_lin, plan, metric, model, paired,
                         AggregationConfig::uniform(), kDefaultExposednessEpsilon);
}

}  // namespace hdriqa
