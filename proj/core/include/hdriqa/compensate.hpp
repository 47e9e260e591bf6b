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

#ifndef HDRIQA_COMPENSATE_HPP_
#define HDRIQA_COMPENSATE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hdriqa/display.hpp"
#include "hdriqa/metrics.hpp"
#include "hdriqa/pooling.hpp"

namespace hdriqa {

enum class CompensationMode {
  None,      // test stack uses the reference exposures
  Optimize,  // per-window 1-D search over the test exposure
  Paired,    // loss mode: exposures tied to the reference by definition
};

CompensationMode compensation_mode_from_name(std::string_view name);
std::string compensation_mode_name(CompensationMode mode);

struct CompensationConfig {
  CompensationMode mode = CompensationMode::None;
  double search_halfwidth = 4.0;  // stops either side of the start
  double tolerance = 1e-4;        // stops
  int max_evals = 200;

  void validate() const;
};

/// Outcome of one window's exposure search.
struct WindowOptimum {
  double exposure = 0.0;         // argmax gain
  double pooled = 0.0;           // objective at the argmax
  double pooled_at_start = 0.0;  // objective at the reference gain
  int evaluations = 0;
};

/// Maximizes the pooled local quality of inverse_display(test_hdr, 2^x)
/// against ref_ldr over x in [log2(v) - hw, log2(v) + hw]. A coarse
/// 33-point scan picks the sub-bracket for golden-section refinement; the
/// start point is always evaluated, so the result never scores below it.
WindowOptimum compensate_window(const LdrImage& ref_ldr,
                                const HdrImage& test_hdr, double exposure,
                                const WeightField& weights, int k,
                                const BaseMetric& metric,
                                const DisplayModel& model,
                                const CompensationConfig& config);

struct WindowScore {
  int index = 0;                    // 1-based window number
  double exposure = 0.0;            // v
  double optimized_exposure = 0.0;  // v-hat (equals v unless optimizing)
  double pooled = 0.0;              // per-window score, pre-finalize
  double gain = 0.0;                // pooled - pooled at v (0 unless optimizing)
  int evaluations = 0;
};

struct QualityReport {
  std::string metric;
  CompensationMode mode = CompensationMode::None;
  double score = 0.0;             // finalized Q (or Q* when optimizing)
  double aggregate_pooled = 0.0;  // cross-exposure aggregate before finalize
  std::vector<WindowScore> windows;
  WindowPlan plan;
  DisplayModel display;
  double epsilon = kDefaultExposednessEpsilon;
  std::vector<double> global_weights;  // resolved, one per window
};

/// Aggregate view of the exposure searches in a report.
struct CompensationResult {
  std::vector<double> optimized_exposures;
  std::vector<double> per_window_gain;
  int evaluations = 0;
};

CompensationResult compensation_summary(const QualityReport& report);

/// Full-reference HDR score: window placement and weights come from the
/// reference, both images are decomposed, each exposure is pooled (with
/// optional compensation), and the aggregate is finalized per metric.
QualityReport score_hdr(const HdrImage& ref, const HdrImage& test,
                        const BaseMetric& metric, const DisplayModel& model,
                        const CompensationConfig& comp = {},
                        const AggregationConfig& agg = {},
                        double epsilon = kDefaultExposednessEpsilon);

/// LDR pathway: both images pass through the forward display model and are
/// scored at the single matched exposure, which reduces the pipeline to
/// the base metric.
QualityReport score_ldr(const LdrImage& ref, const LdrImage& test,
                        const BaseMetric& metric,
                        const DisplayModel& model = {});

}  // namespace hdriqa

#endif  // HDRIQA_COMPENSATE_HPP_
