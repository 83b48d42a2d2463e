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

#include "framedrop/detector_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "framedrop/errors.h"

namespace framedrop {
namespace {

constexpr double kMinExtent = 0.1;
constexpr std::array<double, 3> kDefaultCarExtent = {3.9, 1.6, 1.5};

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 FrameStream(std::uint64_t seed, std::uint64_t sequence_key,
                            int frame_index) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ sequence_key);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(frame_index));
  return std::mt19937_64(h);
}

double Gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  if (hi <= lo) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

ClassSet DefaultClassSet() { return {ObjectClass::kCar}; }

void NoiseProfile::Validate() const {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(detection_probability)) {
    throw ConfigError("detection_probability must lie in [0, 1]");
  }
  if (!(false_positives_per_frame >= 0.0) || !(center_sigma >= 0.0) ||
      !(extent_sigma >= 0.0) || !(yaw_sigma >= 0.0)) {
    throw ConfigError("noise rates and sigmas must be nonnegative");
  }
  if (!in_unit(score_low) || !in_unit(score_high) || score_low > score_high) {
    throw ConfigError("score range must be an ordered subset of [0, 1]");
  }
}

std::uint64_t SequenceKey(std::string_view sequence_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : sequence_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

SceneContext SceneContext::FromLabels(std::string_view sequence_id,
                                      std::span<const LabeledObject> labels,
                                      const ClassSet& classes, double margin) {
  SceneContext scene;
  scene.sequence_key = SequenceKey(sequence_id);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double lo[3] = {kInf, kInf, kInf};
  double hi[3] = {-kInf, -kInf, -kInf};
  for (const LabeledObject& label : labels) {
    if (!classes.contains(label.class_label)) continue;
    const double p[3] = {label.box.cx, label.box.cy, label.box.cz};
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
    scene.extents.push_back(
        {label.box.length, label.box.width, label.box.height});
  }
  if (scene.extents.empty()) return scene;
  scene.min_x = lo[0] - margin;
  scene.max_x = hi[0] + margin;
  scene.min_y = lo[1] - margin;
  scene.max_y = hi[1] + margin;
  // Clutter stays at label heights; only the ground plane is expanded.
  scene.min_z = lo[2];
  scene.max_z = hi[2];
  return scene;
}

std::vector<Detection> GtDetect(std::span<const LabeledObject> frame_labels,
                                const ClassSet& classes) {
  std::vector<Detection> detections;
  detections.reserve(frame_labels.size());
  for (const LabeledObject& label : frame_labels) {
    if (!classes.contains(label.class_label)) continue;
    detections.push_back({label.box, 1.0, label.class_label});
  }
  return detections;
}

std::vector<Detection> NoisyDetect(std::span<const LabeledObject> frame_labels,
                                   const NoiseProfile& profile,
                                   const SceneContext& scene, int frame_index,
                                   const ClassSet& classes) {
  profile.Validate();
  std::mt19937_64 rng =
      FrameStream(profile.rng_seed, scene.sequence_key, frame_index);
  std::vector<Detection> detections;
  for (const LabeledObject& label : frame_labels) {
    if (!classes.contains(label.class_label)) continue;
    if (Uniform(rng, 0.0, 1.0) >= profile.detection_probability) continue;
    OrientedBox box = label.box;
    box.cx += Gaussian(rng, profile.center_sigma);
    box.cy += Gaussian(rng, profile.center_sigma);
    box.cz += Gaussian(rng, profile.center_sigma);
    box.length =
        std::max(kMinExtent, box.length + Gaussian(rng, profile.extent_sigma));
    box.width =
        std::max(kMinExtent, box.width + Gaussian(rng, profile.extent_sigma));
    box.height =
        std::max(kMinExtent, box.height + Gaussian(rng, profile.extent_sigma));
    box.yaw = NormalizeYaw(box.yaw + Gaussian(rng, profile.yaw_sigma));
    const double score = Uniform(rng, profile.score_low, profile.score_high);
    detections.push_back({box, score, label.class_label});
  }

  if (profile.false_positives_per_frame > 0.0) {
    const int clutter = std::poisson_distribution<int>(
        profile.false_positives_per_frame)(rng);
    const ObjectClass cls =
        classes.empty() ? ObjectClass::kCar : *classes.begin();
    for (int i = 0; i < clutter; ++i) {
      std::array<double, 3> extent = kDefaultCarExtent;
      if (!scene.extents.empty()) {
        std::uniform_int_distribution<size_t> pick(0, scene.extents.size() - 1);
        extent = scene.extents[pick(rng)];
      }
      OrientedBox box;
      box.cx = Uniform(rng, scene.min_x, scene.max_x);
      box.cy = Uniform(rng, scene.min_y, scene.max_y);
      box.cz = Uniform(rng, scene.min_z, scene.max_z);
      box.length = extent[0];
      box.width = extent[1];
      box.height = extent[2];
      box.yaw = NormalizeYaw(Uniform(rng, -std::numbers::pi, std::numbers::pi));
      const double score = Uniform(rng, profile.score_low, profile.score_high);
      detections.push_back({box, score, cls});
    }
  }
  return detections;
}

}  // namespace framedrop
