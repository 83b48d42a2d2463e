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

#ifndef FRAMEDROP_DETECTOR_SIM_H_
#define FRAMEDROP_DETECTOR_SIM_H_

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "framedrop/geometry.h"

namespace framedrop {

using ClassSet = std::set<ObjectClass>;

// {Car}.
ClassSet DefaultClassSet();

// Parametric stand-in for a learned detector.
struct NoiseProfile {
  double detection_probability = 1.0;
  // Poisson mean of clutter detections per processed frame.
  double false_positives_per_frame = 0.0;
  double center_sigma = 0.0;  // m, per axis
  double extent_sigma = 0.0;  // m, per extent
  double yaw_sigma = 0.0;     // rad
  double score_low = 1.0;
  double score_high = 1.0;
  std::uint64_t rng_seed = 0;

  // Throws ConfigError on probabilities outside [0, 1], negative sigmas or
  // rates, or an unordered score range.
  void Validate() const;
};

// Per-sequence data the noisy detector needs beyond a single frame: the
// clutter region and the pool of extents clutter is drawn from.
struct SceneContext {
  std::uint64_t sequence_key = 0;
  double min_x = -10.0, max_x = 10.0;
  double min_y = -10.0, max_y = 10.0;
  double min_z = -10.0, max_z = 10.0;
  // (length, width, height) of every label in the sequence.
  std::vector<std::array<double, 3>> extents;

  // The clutter region is the axis-aligned bounds of all label centers,
  // expanded by `margin` meters in x and y.
  static SceneContext FromLabels(std::string_view sequence_id,
                                 std::span<const LabeledObject> labels,
                                 const ClassSet& classes,
                                 double margin = 10.0);
};

// Stable 64-bit key of a sequence id (FNV-1a).
std::uint64_t SequenceKey(std::string_view sequence_id);

// Perfect detector: one detection per label of an accepted class, box
// copied exactly, score 1.
std::vector<Detection> GtDetect(std::span<const LabeledObject> frame_labels,
                                const ClassSet& classes = DefaultClassSet());

// Noisy detector. Output depends only on (labels, profile, scene sequence
// key, frame_index); the random stream is keyed by all three so the noise on
// a frame does not depend on which other frames were processed.
std::vector<Detection> NoisyDetect(std::span<const LabeledObject> frame_labels,
                                   const NoiseProfile& profile,
                                   const SceneContext& scene, int frame_index,
                                   const ClassSet& classes = DefaultClassSet());

}  // namespace framedrop

#endif  // FRAMEDROP_DETECTOR_SIM_H_
