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

#include "framedrop/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "framedrop/assignment.h"

namespace framedrop {
namespace {

std::map<int, int> DenseIds(const std::set<int>& ids) {
  std::map<int, int> dense;
  for (const int id : ids) dense.emplace(id, static_cast<int>(dense.size()));
  return dense;
}

}  // namespace

EvalSequence BuildEvalSequence(std::span<const LabeledObject> labels,
                               std::span<const FrameOutput> outputs,
                               SimilarityMetric similarity) {
  std::set<int> gt_ids, tracker_ids;
  struct RawFrame {
    std::vector<const LabeledObject*> gt;
    std::vector<const FrameEntry*> tracker;
  };
  std::map<int, RawFrame> raw;
  for (const LabeledObject& label : labels) {
    gt_ids.insert(label.track_id);
    raw[label.frame_index].gt.push_back(&label);
  }
  for (const FrameOutput& output : outputs) {
    RawFrame& frame = raw[output.frame_index];
    for (const FrameEntry& entry : output.entries) {
      tracker_ids.insert(entry.track_id);
      frame.tracker.push_back(&entry);
    }
  }
  const std::map<int, int> gt_dense = DenseIds(gt_ids);
  const std::map<int, int> tracker_dense = DenseIds(tracker_ids);

  EvalSequence sequence;
  sequence.num_gt_ids = static_cast<int>(gt_dense.size());
  sequence.num_tracker_ids = static_cast<int>(tracker_dense.size());
  sequence.frames.reserve(raw.size());
  for (const auto& [frame_index, frame] : raw) {
    EvalFrame eval;
    eval.frame_index = frame_index;
    for (const LabeledObject* gt : frame.gt) {
      eval.gt_ids.push_back(gt_dense.at(gt->track_id));
    }
    for (const FrameEntry* entry : frame.tracker) {
      eval.tracker_ids.push_back(tracker_dense.at(entry->track_id));
    }
    eval.similarity.resize(frame.gt.size(), frame.tracker.size());
    for (size_t i = 0; i < frame.gt.size(); ++i) {
      for (size_t j = 0; j < frame.tracker.size(); ++j) {
        eval.similarity(i, j) =
            Similarity(similarity, frame.gt[i]->box, frame.tracker[j]->box);
      }
    }
    sequence.frames.push_back(std::move(eval));
  }
  return sequence;
}

ClearCounts& ClearCounts::operator+=(const ClearCounts& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  id_switches += other.id_switches;
  gt_total += other.gt_total;
  similarity_sum += other.similarity_sum;
  return *this;
}

ClearCounts AccumulateClear(const EvalSequence& sequence,
                            double match_threshold) {
  ClearCounts counts;
  // Tracker matched to each gt id in the previous frame, and the most recent
  // tracker it was ever matched to.
  std::vector<int> previous_frame_match(sequence.num_gt_ids, -1);
  std::vector<int> last_match(sequence.num_gt_ids, -1);
  const double threshold = match_threshold - kSimilarityEpsilon;

  for (const EvalFrame& frame : sequence.frames) {
    const int ng = static_cast<int>(frame.gt_ids.size());
    const int nt = static_cast<int>(frame.tracker_ids.size());
    counts.gt_total += ng;

    std::vector<int> gt_to_tracker(ng, -1);
    std::vector<char> tracker_taken(nt, 0);
    // Continue last frame's matches that are still above threshold.
    for (int i = 0; i < ng; ++i) {
      const int previous = previous_frame_match[frame.gt_ids[i]];
      if (previous < 0) continue;
      for (int j = 0; j < nt; ++j) {
        if (frame.tracker_ids[j] == previous && !tracker_taken[j] &&
            frame.similarity(i, j) >= threshold) {
          gt_to_tracker[i] = j;
          tracker_taken[j] = 1;
          break;
        }
      }
    }
    // Optimal assignment over the rest.
    std::vector<int> free_gt, free_tracker;
    for (int i = 0; i < ng; ++i) {
      if (gt_to_tracker[i] < 0) free_gt.push_back(i);
    }
    for (int j = 0; j < nt; ++j) {
      if (!tracker_taken[j]) free_tracker.push_back(j);
    }
    Eigen::MatrixXd rest(free_gt.size(), free_tracker.size());
    for (size_t a = 0; a < free_gt.size(); ++a) {
      for (size_t b = 0; b < free_tracker.size(); ++b) {
        rest(a, b) = frame.similarity(free_gt[a], free_tracker[b]);
      }
    }
    for (const auto& [a, b] : MaximizeScoreMatching(rest, threshold)) {
      gt_to_tracker[free_gt[a]] = free_tracker[b];
    }

    std::fill(previous_frame_match.begin(), previous_frame_match.end(), -1);
    int matched = 0;
    for (int i = 0; i < ng; ++i) {
      const int j = gt_to_tracker[i];
      if (j < 0) continue;
      ++matched;
      const int gt = frame.gt_ids[i];
      const int tracker = frame.tracker_ids[j];
      if (last_match[gt] >= 0 && last_match[gt] != tracker) {
        ++counts.id_switches;
      }
      last_match[gt] = tracker;
      previous_frame_match[gt] = tracker;
      counts.similarity_sum += frame.similarity(i, j);
    }
    counts.tp += matched;
    counts.fn += ng - matched;
    counts.fp += nt - matched;
  }
  return counts;
}

ClearResult SummarizeClear(const ClearCounts& counts) {
  if (counts.gt_total == 0) throw NoGroundTruthError();
  ClearResult result;
  result.tp = counts.tp;
  result.fp = counts.fp;
  result.fn = counts.fn;
  result.id_switches = counts.id_switches;
  result.gt_total = counts.gt_total;
  result.mota = 100.0 * (1.0 - static_cast<double>(counts.fn + counts.fp +
                                                   counts.id_switches) /
                                   static_cast<double>(counts.gt_total));
  result.motp = counts.tp > 0
                    ? 100.0 * counts.similarity_sum / static_cast<double>(counts.tp)
                    : 0.0;
  return result;
}

ClearResult ClearMot(std::span<const LabeledObject> labels,
                     std::span<const FrameOutput> outputs,
                     const MetricsConfig& config) {
  return SummarizeClear(AccumulateClear(
      BuildEvalSequence(labels, outputs, config.similarity),
      config.clear_threshold));
}

std::array<double, kNumHotaAlphas> HotaAlphas() {
  std::array<double, kNumHotaAlphas> alphas{};
  for (int a = 0; a < kNumHotaAlphas; ++a) alphas[a] = 0.05 * (a + 1);
  return alphas;
}

HotaCounts& HotaCounts::operator+=(const HotaCounts& other) {
  for (int a = 0; a < kNumHotaAlphas; ++a) {
    tp[a] += other.tp[a];
    fn[a] += other.fn[a];
    fp[a] += other.fp[a];
    association_sum[a] += other.association_sum[a];
  }
  gt_total += other.gt_total;
  return *this;
}

HotaCounts AccumulateHota(const EvalSequence& sequence) {
  const int ng = sequence.num_gt_ids;
  const int nt = sequence.num_tracker_ids;
  const auto alphas = HotaAlphas();
  HotaCounts counts;

  // Global alignment between ids: soft overlap counts accumulated over all
  // frames, normalized as a Jaccard index of id presence.
  Eigen::MatrixXd potential = Eigen::MatrixXd::Zero(ng, nt);
  Eigen::VectorXd gt_count = Eigen::VectorXd::Zero(ng);
  Eigen::VectorXd tracker_count = Eigen::VectorXd::Zero(nt);
  for (const EvalFrame& frame : sequence.frames) {
    const Eigen::MatrixXd& sim = frame.similarity;
    const Eigen::VectorXd row_sum = sim.rowwise().sum();
    const Eigen::RowVectorXd col_sum = sim.colwise().sum();
    for (int i = 0; i < sim.rows(); ++i) {
      for (int j = 0; j < sim.cols(); ++j) {
        const double denom = row_sum(i) + col_sum(j) - sim(i, j);
        if (denom > kSimilarityEpsilon) {
          potential(frame.gt_ids[i], frame.tracker_ids[j]) += sim(i, j) / denom;
        }
      }
    }
    for (const int g : frame.gt_ids) gt_count(g) += 1.0;
    for (const int t : frame.tracker_ids) tracker_count(t) += 1.0;
  }
  Eigen::MatrixXd alignment = Eigen::MatrixXd::Zero(ng, nt);
  for (int g = 0; g < ng; ++g) {
    for (int t = 0; t < nt; ++t) {
      const double denom = gt_count(g) + tracker_count(t) - potential(g, t);
      if (denom > 0.0) alignment(g, t) = potential(g, t) / denom;
    }
  }

  std::vector<Eigen::MatrixXd> match_counts(kNumHotaAlphas,
                                            Eigen::MatrixXd::Zero(ng, nt));
  for (const EvalFrame& frame : sequence.frames) {
    const int fg = static_cast<int>(frame.gt_ids.size());
    const int ft = static_cast<int>(frame.tracker_ids.size());
    counts.gt_total += fg;
    if (fg == 0 || ft == 0) {
      for (int a = 0; a < kNumHotaAlphas; ++a) {
        counts.fp[a] += ft;
        counts.fn[a] += fg;
      }
      continue;
    }
    Eigen::MatrixXd score(fg, ft);
    for (int i = 0; i < fg; ++i) {
      for (int j = 0; j < ft; ++j) {
        score(i, j) = alignment(frame.gt_ids[i], frame.tracker_ids[j]) *
                      frame.similarity(i, j);
      }
    }
    const auto matches = MaximizeScoreMatching(score, 0.0);
    for (int a = 0; a < kNumHotaAlphas; ++a) {
      int matched = 0;
      for (const auto& [i, j] : matches) {
        if (frame.similarity(i, j) >= alphas[a] - kSimilarityEpsilon) {
          ++matched;
          match_counts[a](frame.gt_ids[i], frame.tracker_ids[j]) += 1.0;
        }
      }
      counts.tp[a] += matched;
      counts.fn[a] += fg - matched;
      counts.fp[a] += ft - matched;
    }
  }

  // Each TP between ids (g, t) carries A = TPA / (TPA + FNA + FPA), where
  // TPA = matches(g, t), FNA = gt_count(g) - TPA, FPA = tracker_count(t) - TPA.
  for (int a = 0; a < kNumHotaAlphas; ++a) {
    const Eigen::MatrixXd& mc = match_counts[a];
    double sum = 0.0;
    for (int g = 0; g < ng; ++g) {
      for (int t = 0; t < nt; ++t) {
        if (mc(g, t) <= 0.0) continue;
        const double denom =
            std::max(1.0, gt_count(g) + tracker_count(t) - mc(g, t));
        sum += mc(g, t) * (mc(g, t) / denom);
      }
    }
    counts.association_sum[a] = sum;
  }
  return counts;
}

HotaResult SummarizeHota(const HotaCounts& counts) {
  if (counts.gt_total == 0) throw NoGroundTruthError();
  const auto alphas = HotaAlphas();
  HotaResult result;
  double hota_sum = 0.0, det_sum = 0.0, ass_sum = 0.0;
  for (int a = 0; a < kNumHotaAlphas; ++a) {
    HotaAlphaResult r;
    r.alpha = alphas[a];
    const double tp = static_cast<double>(counts.tp[a]);
    const double denom = tp + counts.fn[a] + counts.fp[a];
    r.det_a = tp / std::max(1.0, denom);
    r.ass_a = counts.association_sum[a] / std::max(1.0, tp);
    r.hota = std::sqrt(r.det_a * r.ass_a);
    hota_sum += r.hota;
    det_sum += r.det_a;
    ass_sum += r.ass_a;
    result.per_alpha.push_back(r);
  }
  result.hota = 100.0 * hota_sum / kNumHotaAlphas;
  result.det_a = 100.0 * det_sum / kNumHotaAlphas;
  result.ass_a = 100.0 * ass_sum / kNumHotaAlphas;
  return result;
}

HotaResult Hota(std::span<const LabeledObject> labels,
                std::span<const FrameOutput> outputs,
                const MetricsConfig& config) {
  return SummarizeHota(
      AccumulateHota(BuildEvalSequence(labels, outputs, config.similarity)));
}

}  // namespace framedrop
