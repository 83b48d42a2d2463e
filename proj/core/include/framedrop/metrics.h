/* Copyright 2026 The Framedrop Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// CLEAR-MOT and HOTA evaluation of per-frame tracker outputs.
//
// Both metrics come in two stages: Accumulate* produces additive counts for
// one sequence, Summarize* turns (possibly pooled) counts into scores. Pooling
// counts over sequences before summarizing gives benchmark-style results.

#ifndef FRAMEDROP_METRICS_H_
#define FRAMEDROP_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "framedrop/errors.h"
#include "framedrop/geometry.h"
#include "framedrop/tracker.h"

namespace framedrop {

struct MetricsConfig {
  SimilarityMetric similarity = SimilarityMetric::kIou3d;
  // Minimum similarity for a CLEAR match.
  double clear_threshold = 0.5;
};

// Thrown when a score needs ground truth and there is none.
class NoGroundTruthError : public ComputationError {
 public:
  NoGroundTruthError()
      : ComputationError("no ground-truth objects: metric undefined") {}
};

// Tolerance applied to every similarity-threshold comparison.
inline constexpr double kSimilarityEpsilon = 2.220446049250313e-16;

// Dense per-frame view of one sequence: ids are renumbered 0..n-1 in
// increasing order of the original ids, frames are the sorted union of
// labeled and output frame indices.
struct EvalFrame {
  int frame_index = 0;
  std::vector<int> gt_ids;
  std::vector<int> tracker_ids;
  // similarity(i, j) between gt_ids[i] and tracker_ids[j].
  Eigen::MatrixXd similarity;
};

struct EvalSequence {
  int num_gt_ids = 0;
  int num_tracker_ids = 0;
  std::vector<EvalFrame> frames;
};

EvalSequence BuildEvalSequence(std::span<const LabeledObject> labels,
                               std::span<const FrameOutput> outputs,
                               SimilarityMetric similarity);

struct ClearCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t id_switches = 0;
  std::int64_t gt_total = 0;
  double similarity_sum = 0.0;

  ClearCounts& operator+=(const ClearCounts& other);
};

struct ClearResult {
  double mota = 0.0;  // percent, <= 100
  double motp = 0.0;  // mean matched similarity, percent
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t id_switches = 0;
  std::int64_t gt_total = 0;
};

ClearCounts AccumulateClear(const EvalSequence& sequence,
                            double match_threshold);
// Throws NoGroundTruthError if gt_total is 0.
ClearResult SummarizeClear(const ClearCounts& counts);

ClearResult ClearMot(std::span<const LabeledObject> labels,
                     std::span<const FrameOutput> outputs,
                     const MetricsConfig& config = {});

inline constexpr int kNumHotaAlphas = 19;

// 0.05, 0.10, ..., 0.95.
std::array<double, kNumHotaAlphas> HotaAlphas();

struct HotaCounts {
  std::array<std::int64_t, kNumHotaAlphas> tp{};
  std::array<std::int64_t, kNumHotaAlphas> fn{};
  std::array<std::int64_t, kNumHotaAlphas> fp{};
  // Sum over true positives of the association score A(c) of each TP.
  std::array<double, kNumHotaAlphas> association_sum{};
  std::int64_t gt_total = 0;

  HotaCounts& operator+=(const HotaCounts& other);
};

struct HotaAlphaResult {
  double alpha = 0.0;
  double hota = 0.0;
  double det_a = 0.0;
  double ass_a = 0.0;
};

struct HotaResult {
  // Percent; averages of the per-alpha values.
  double hota = 0.0;
  double det_a = 0.0;
  double ass_a = 0.0;
  // Per-alpha values as fractions in [0, 1].
  std::vector<HotaAlphaResult> per_alpha;
};

HotaCounts AccumulateHota(const EvalSequence& sequence);
// Throws NoGroundTruthError if gt_total is 0.
HotaResult SummarizeHota(const HotaCounts& counts);

HotaResult Hota(std::span<const LabeledObject> labels,
                std::span<const FrameOutput> outputs,
                const MetricsConfig& config = {});

}  // namespace framedrop

#endif  // FRAMEDROP_METRICS_H_
