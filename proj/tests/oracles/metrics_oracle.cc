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

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "oracles.h"

namespace framedrop::oracle {
namespace {

struct Item {
  int id;
  OrientedBox box;
};

struct Frame {
  std::vector<Item> gts;
  std::vector<Item> trackers;
  std::vector<std::vector<double>> sim;  // [gt][tracker]
};

std::vector<Frame> GroupFrames(std::span<const LabeledObject> labels,
                               std::span<const FrameOutput> outputs,
                               SimilarityMetric similarity) {
  int frame_count = 0;
  for (const LabeledObject& l : labels) {
    frame_count = std::max(frame_count, l.frame_index + 1);
  }
  for (const FrameOutput& o : outputs) {
    frame_count = std::max(frame_count, o.frame_index + 1);
  }
  std::vector<Frame> frames(frame_count);
  for (const LabeledObject& l : labels) {
    frames[l.frame_index].gts.push_back({l.track_id, l.box});
  }
  for (const FrameOutput& o : outputs) {
    for (const FrameEntry& e : o.entries) {
      frames[o.frame_index].trackers.push_back({e.track_id, e.box});
    }
  }
  for (Frame& f : frames) {
    f.sim.assign(f.gts.size(), std::vector<double>(f.trackers.size(), 0.0));
    for (size_t i = 0; i < f.gts.size(); ++i) {
      for (size_t j = 0; j < f.trackers.size(); ++j) {
        f.sim[i][j] = Similarity(similarity, f.gts[i].box, f.trackers[j].box);
      }
    }
  }
  return frames;
}

// All partial matchings as gt -> tracker index (-1 unmatched) restricted to
// allowed pairs.
template <typename Allowed>
void EnumerateMatchings(int num_gt, int num_tracker, const Allowed& allowed,
                        std::vector<std::vector<int>>& out) {
  std::vector<int> current(num_gt, -1);
  std::vector<char> used(num_tracker, 0);
  const auto recurse = [&](auto& self, int i) -> void {
    if (i == num_gt) {
      out.push_back(current);
      return;
    }
    self(self, i + 1);
    for (int j = 0; j < num_tracker; ++j) {
      if (used[j] || !allowed(i, j)) continue;
      used[j] = 1;
      current[i] = j;
      self(self, i + 1);
      current[i] = -1;
      used[j] = 0;
    }
  };
  recurse(recurse, 0);
}

}  // namespace

ClearOracleResult BruteForceClear(std::span<const LabeledObject> labels,
                                  std::span<const FrameOutput> outputs,
                                  SimilarityMetric similarity,
                                  double threshold) {
  const double eps = kSimilarityEpsilon;
  const std::vector<Frame> frames = GroupFrames(labels, outputs, similarity);
  ClearOracleResult r;
  std::map<int, int> previous_frame;  // gt id -> tracker id
  std::map<int, int> last_ever;
  double sim_sum = 0.0;
  for (const Frame& f : frames) {
    const int ng = static_cast<int>(f.gts.size());
    const int nt = static_cast<int>(f.trackers.size());
    std::vector<std::vector<int>> candidates;
    EnumerateMatchings(ng, nt,
                       [&](int i, int j) {
                         return f.sim[i][j] >= threshold - eps &&
                                f.sim[i][j] > 0.0;
                       },
                       candidates);
    std::pair<int, double> best_key{-1, -1.0};
    std::vector<int> best;
    for (const auto& m : candidates) {
      int continued = 0;
      double total = 0.0;
      for (int i = 0; i < ng; ++i) {
        if (m[i] < 0) continue;
        total += f.sim[i][m[i]];
        const auto it = previous_frame.find(f.gts[i].id);
        if (it != previous_frame.end() &&
            it->second == f.trackers[m[i]].id) {
          ++continued;
        }
      }
      const std::pair<int, double> key{continued, total};
      if (key > best_key) {
        best_key = key;
        best = m;
      }
    }
    previous_frame.clear();
    int matched = 0;
    for (int i = 0; i < ng; ++i) {
      if (best[i] < 0) continue;
      ++matched;
      const int gt = f.gts[i].id;
      const int tracker = f.trackers[best[i]].id;
      const auto it = last_ever.find(gt);
      if (it != last_ever.end() && it->second != tracker) ++r.id_switches;
      last_ever[gt] = tracker;
      previous_frame[gt] = tracker;
      sim_sum += f.sim[i][best[i]];
    }
    r.tp += matched;
    r.fn += ng - matched;
    r.fp += nt - matched;
    r.gt_total += ng;
  }
  if (r.gt_total > 0) {
    r.mota = 100.0 * (1.0 - static_cast<double>(r.fn + r.fp + r.id_switches) /
                                static_cast<double>(r.gt_total));
  }
  r.motp = r.tp > 0 ? 100.0 * sim_sum / static_cast<double>(r.tp) : 0.0;
  return r;
}

HotaOracleResult BruteForceHota(std::span<const LabeledObject> labels,
                                std::span<const FrameOutput> outputs,
                                SimilarityMetric similarity) {
  const double eps = kSimilarityEpsilon;
  const std::vector<Frame> frames = GroupFrames(labels, outputs, similarity);

  // Soft co-occurrence of every (gt id, tracker id) pair over the sequence.
  std::map<std::pair<int, int>, double> potential;
  std::map<int, int> gt_count, tracker_count;
  for (const Frame& f : frames) {
    for (const Item& g : f.gts) ++gt_count[g.id];
    for (const Item& t : f.trackers) ++tracker_count[t.id];
    for (size_t i = 0; i < f.gts.size(); ++i) {
      for (size_t j = 0; j < f.trackers.size(); ++j) {
        double row = 0.0, col = 0.0;
        for (size_t k = 0; k < f.trackers.size(); ++k) row += f.sim[i][k];
        for (size_t k = 0; k < f.gts.size(); ++k) col += f.sim[k][j];
        const double denom = row + col - f.sim[i][j];
        if (denom > eps) {
          potential[{f.gts[i].id, f.trackers[j].id}] += f.sim[i][j] / denom;
        }
      }
    }
  }
  const auto alignment = [&](int g, int t) {
    const auto it = potential.find({g, t});
    const double p = it == potential.end() ? 0.0 : it->second;
    return p / (gt_count[g] + tracker_count[t] - p);
  };

  const auto alphas = HotaAlphas();
  HotaOracleResult r;
  // Every TP at each alpha, as (gt id, tracker id).
  std::array<std::vector<std::pair<int, int>>, kNumHotaAlphas> tps;
  for (const Frame& f : frames) {
    const int ng = static_cast<int>(f.gts.size());
    const int nt = static_cast<int>(f.trackers.size());
    std::vector<std::vector<double>> weight(ng, std::vector<double>(nt));
    for (int i = 0; i < ng; ++i) {
      for (int j = 0; j < nt; ++j) {
        weight[i][j] = alignment(f.gts[i].id, f.trackers[j].id) * f.sim[i][j];
      }
    }
    std::vector<std::vector<int>> candidates;
    EnumerateMatchings(ng, nt,
                       [&](int i, int j) { return weight[i][j] > 0.0; },
                       candidates);
    double best_total = -1.0;
    std::vector<int> best;
    for (const auto& m : candidates) {
      double total = 0.0;
      for (int i = 0; i < ng; ++i) {
        if (m[i] >= 0) total += weight[i][m[i]];
      }
      if (total > best_total) {
        best_total = total;
        best = m;
      }
    }
    for (int a = 0; a < kNumHotaAlphas; ++a) {
      int matched = 0;
      for (int i = 0; i < ng; ++i) {
        if (best[i] >= 0 && f.sim[i][best[i]] >= alphas[a] - eps) {
          ++matched;
          tps[a].push_back({f.gts[i].id, f.trackers[best[i]].id});
        }
      }
      r.tp[a] += matched;
      r.fn[a] += ng - matched;
      r.fp[a] += nt - matched;
    }
  }

  for (int a = 0; a < kNumHotaAlphas; ++a) {
    std::map<std::pair<int, int>, int> tpa;
    for (const auto& c : tps[a]) ++tpa[c];
    double association = 0.0;
    for (const auto& c : tps[a]) {
      const double t = tpa[c];
      const double fna = gt_count[c.first] - t;
      const double fpa = tracker_count[c.second] - t;
      association += t / (t + fna + fpa);
    }
    const double tp = static_cast<double>(r.tp[a]);
    r.ass_a[a] = association / std::max(1.0, tp);
    r.det_a[a] =
        tp / std::max(1.0, tp + static_cast<double>(r.fn[a] + r.fp[a]));
    r.hota_alpha[a] = std::sqrt(r.det_a[a] * r.ass_a[a]);
    r.hota += r.hota_alpha[a];
    r.det_a_mean += r.det_a[a];
    r.ass_a_mean += r.ass_a[a];
  }
  r.hota *= 100.0 / kNumHotaAlphas;
  r.det_a_mean *= 100.0 / kNumHotaAlphas;
  r.ass_a_mean *= 100.0 / kNumHotaAlphas;
  return r;
}

}  // namespace framedrop::oracle
