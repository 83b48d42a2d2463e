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

// Slow, independent reference implementations used to check the library.
// None of these share code paths with the functions they check.

#ifndef FRAMEDROP_TESTS_ORACLES_H_
#define FRAMEDROP_TESTS_ORACLES_H_

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "framedrop/geometry.h"
#include "framedrop/metrics.h"
#include "framedrop/tracker.h"

namespace framedrop::oracle {

// Samples `samples` points uniformly inside `a`'s footprint and counts how
// many land inside `b`'s footprint.
double MonteCarloBevIou(const OrientedBox& a, const OrientedBox& b,
                        int samples, std::uint64_t seed);

// Minimum total cost over every way of pairing min(rows, cols) rows with
// distinct columns.
double BruteForceMinCost(const Eigen::MatrixXd& cost);

// Maximum total score over all partial matchings restricted to pairs with
// score >= min_score and score > 0.
double BruteForceMaxScore(const Eigen::MatrixXd& score, double min_score);

// Average draw of a schedule simulated on a 1 ms tick clock.
double SimulateDrawMs(double idle_draw, double active_draw, int inference_ms,
                      int cycle_ms, std::span<const char> processed);

struct ClearOracleResult {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t id_switches = 0;
  std::int64_t gt_total = 0;
  double mota = 0.0;
  double motp = 0.0;
};

// Per frame, enumerates every partial matching of pairs at or above the
// threshold and keeps the one with the most continued identities, then the
// largest similarity sum.
ClearOracleResult BruteForceClear(std::span<const LabeledObject> labels,
                                  std::span<const FrameOutput> outputs,
                                  SimilarityMetric similarity,
                                  double threshold);

struct HotaOracleResult {
  std::array<std::int64_t, kNumHotaAlphas> tp{};
  std::array<std::int64_t, kNumHotaAlphas> fn{};
  std::array<std::int64_t, kNumHotaAlphas> fp{};
  std::array<double, kNumHotaAlphas> det_a{};
  std::array<double, kNumHotaAlphas> ass_a{};
  std::array<double, kNumHotaAlphas> hota_alpha{};
  double hota = 0.0;  // percent
  double det_a_mean = 0.0;
  double ass_a_mean = 0.0;
};

// Global alignment from soft per-frame IoU, then per frame the matching
// maximizing the summed alignment-weighted similarity by enumeration. Each
// TP's association score TPA / (TPA + FPA + FNA) is evaluated directly by
// counting frames.
HotaOracleResult BruteForceHota(std::span<const LabeledObject> labels,
                                std::span<const FrameOutput> outputs,
                                SimilarityMetric similarity);

// Random inputs for the oracle comparisons.
struct MetricInstance {
  std::vector<LabeledObject> labels;
  std::vector<FrameOutput> outputs;
};

OrientedBox RandomBox(std::mt19937_64& rng, double center_range,
                      double min_extent, double max_extent);

// Up to `max_objects` gt identities and tracker identities over up to
// `max_frames` frames. Tracker boxes are perturbed copies of gt boxes or
// clutter, with ids swapping and tracks dropping in and out.
MetricInstance RandomMetricInstance(std::mt19937_64& rng, int max_objects,
                                    int max_frames);

}  // namespace framedrop::oracle

#endif  // FRAMEDROP_TESTS_ORACLES_H_
