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

#ifndef FRAMEDROP_TRACKER_H_
#define FRAMEDROP_TRACKER_H_

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "framedrop/geometry.h"

namespace framedrop {

// State layout: cx, cy, cz, yaw, length, width, height, vx, vy, vz.
inline constexpr int kStateDim = 10;
inline constexpr int kMeasurementDim = 7;
using StateVector = Eigen::Matrix<double, kStateDim, 1>;
using StateCovariance = Eigen::Matrix<double, kStateDim, kStateDim>;

// Diagonal process noise, as variance growth per second of prediction.
struct ProcessNoise {
  double position = 0.05;
  double yaw = 0.01;
  double extent = 0.001;
  double velocity = 1.0;
};

// Diagonal measurement noise variances.
struct MeasurementNoise {
  double position = 0.01;
  double yaw = 0.01;
  double extent = 0.01;
};

struct TrackerConfig {
  double cycle_time = 0.1;  // s
  int min_hits_to_confirm = 3;
  // A track dies once it has missed this many processed frames in a row.
  int max_misses_to_delete = 2;
  double gate_iou_min = 0.1;
  SimilarityMetric association_metric = SimilarityMetric::kBevIou;
  ProcessNoise process_noise;
  MeasurementNoise measurement_noise;
  // Newborn tracks have zero velocity with this variance per axis.
  double initial_velocity_variance = 25.0;
  // Tracks matched or born during the first min_hits_to_confirm processed
  // frames of a sequence are confirmed immediately.
  bool confirm_during_warmup = true;

  // Throws ConfigError on a non-positive cycle time, thresholds below 1, a
  // gate outside [0, 1] or negative noise terms.
  void Validate() const;
};

enum class TrackStatus { kTentative, kConfirmed, kDead };
std::string_view TrackStatusName(TrackStatus status);

struct TrackState {
  int id = 0;
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();
  int hits = 0;
  // Processed frames since the last measurement update.
  int consecutive_misses = 0;
  TrackStatus status = TrackStatus::kTentative;
  double last_score = 0.0;

  OrientedBox box() const;
};

// Track born from a detection: pose and extents from the box, zero
// velocity, hits = 1.
TrackState InitiateTrack(int id, const Detection& detection,
                         const TrackerConfig& config);

// Constant-velocity prediction over dt seconds. Lifecycle fields untouched.
TrackState Predict(const TrackState& state, double dt,
                   const TrackerConfig& config);

// Kalman correction on the seven observed components. Bumps hits, resets
// consecutive_misses, records the detection score.
TrackState Update(const TrackState& state, const Detection& detection,
                  const TrackerConfig& config);

struct AssociationResult {
  // (track index, detection index), sorted by track index.
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

// Hungarian assignment maximizing summed IoU over pairs with
// IoU >= gate_iou_min.
AssociationResult Associate(std::span<const TrackState> tracks,
                            std::span<const Detection> detections,
                            const TrackerConfig& config);

enum class Provenance { kUpdated, kPredicted };
std::string_view ProvenanceName(Provenance provenance);
Provenance ParseProvenance(std::string_view name);

struct FrameEntry {
  int track_id = 0;
  OrientedBox box;
  double score = 0.0;
  Provenance provenance = Provenance::kPredicted;
};

struct FrameOutput {
  int frame_index = 0;
  // Confirmed tracks only, sorted by track id.
  std::vector<FrameEntry> entries;
};

// Drop-aware tracking-by-detection over one sequence. Every call predicts
// all live tracks forward by one cycle per elapsed frame. Processed frames
// then run association and the track lifecycle; dropped frames leave every
// lifecycle counter untouched and report pure predictions.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config);

  // `detections` is nullopt for a dropped frame. Throws ConfigError if
  // frame_index does not exceed the previous one.
  FrameOutput Step(int frame_index,
                   std::optional<std::span<const Detection>> detections);

  FrameOutput StepProcessed(int frame_index,
                            std::span<const Detection> detections) {
    return Step(frame_index, detections);
  }
  FrameOutput StepDropped(int frame_index) {
    return Step(frame_index, std::nullopt);
  }

  // Live (tentative or confirmed) tracks, in creation order.
  const std::vector<TrackState>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }

 private:
  TrackerConfig config_;
  std::vector<TrackState> tracks_;
  int next_id_ = 1;
  int processed_frames_ = 0;
  std::optional<int> last_frame_;
};

}  // namespace framedrop

#endif  // FRAMEDROP_TRACKER_H_
