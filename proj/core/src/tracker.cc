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

#include "framedrop/tracker.h"

#include <algorithm>
#include <string>

#include <Eigen/Cholesky>

#include "framedrop/assignment.h"
#include "framedrop/errors.h"

namespace framedrop {
namespace {

using MeasurementVector = Eigen::Matrix<double, kMeasurementDim, 1>;
using MeasurementMatrix =
    Eigen::Matrix<double, kMeasurementDim, kMeasurementDim>;
using GainMatrix = Eigen::Matrix<double, kStateDim, kMeasurementDim>;

constexpr int kYaw = 3;
constexpr double kMinOutputExtent = 0.01;
// Keeps the innovation covariance invertible when both the measurement noise
// and the predicted pose uncertainty are zero.
constexpr double kInnovationJitter = 1e-12;

MeasurementVector MeasurementOf(const OrientedBox& box) {
  MeasurementVector z;
  z << box.cx, box.cy, box.cz, box.yaw, box.length, box.width, box.height;
  return z;
}

MeasurementMatrix MeasurementCovariance(const MeasurementNoise& noise) {
  MeasurementVector diag;
  diag << noise.position, noise.position, noise.position, noise.yaw,
      noise.extent, noise.extent, noise.extent;
  return diag.asDiagonal();
}

void Symmetrize(StateCovariance& p) { p = 0.5 * (p + p.transpose()).eval(); }

}  // namespace

void TrackerConfig::Validate() const {
  if (!(cycle_time > 0.0)) throw ConfigError("cycle_time must be positive");
  if (min_hits_to_confirm < 1 || max_misses_to_delete < 1) {
    throw ConfigError("lifecycle thresholds must be at least 1");
  }
  if (!(gate_iou_min >= 0.0 && gate_iou_min <= 1.0)) {
    throw ConfigError("gate_iou_min must lie in [0, 1]");
  }
  const ProcessNoise& q = process_noise;
  const MeasurementNoise& r = measurement_noise;
  if (!(q.position >= 0.0 && q.yaw >= 0.0 && q.extent >= 0.0 &&
        q.velocity >= 0.0 && r.position >= 0.0 && r.yaw >= 0.0 &&
        r.extent >= 0.0 && initial_velocity_variance >= 0.0)) {
    throw ConfigError("noise parameters must be nonnegative");
  }
}

std::string_view TrackStatusName(TrackStatus status) {
  switch (status) {
    case TrackStatus::kTentative:
      return "tentative";
    case TrackStatus::kConfirmed:
      return "confirmed";
    case TrackStatus::kDead:
      return "dead";
  }
  return "dead";
}

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kUpdated ? "updated" : "predicted";
}

Provenance ParseProvenance(std::string_view name) {
  if (name == "updated") return Provenance::kUpdated;
  if (name == "predicted") return Provenance::kPredicted;
  throw DatasetError("unknown provenance '" + std::string(name) + "'");
}

OrientedBox TrackState::box() const {
  OrientedBox b;
  b.cx = mean(0);
  b.cy = mean(1);
  b.cz = mean(2);
  b.yaw = NormalizeYaw(mean(3));
  b.length = std::max(kMinOutputExtent, mean(4));
  b.width = std::max(kMinOutputExtent, mean(5));
  b.height = std::max(kMinOutputExtent, mean(6));
  return b;
}

TrackState InitiateTrack(int id, const Detection& detection,
                         const TrackerConfig& config) {
  TrackState track;
  track.id = id;
  track.mean.setZero();
  track.mean.head<kMeasurementDim>() = MeasurementOf(detection.box);
  track.covariance.setZero();
  track.covariance.topLeftCorner<kMeasurementDim, kMeasurementDim>() =
      MeasurementCovariance(config.measurement_noise);
  track.covariance.bottomRightCorner<3, 3>() =
      config.initial_velocity_variance * Eigen::Matrix3d::Identity();
  track.hits = 1;
  track.consecutive_misses = 0;
  track.status = track.hits >= config.min_hits_to_confirm
                     ? TrackStatus::kConfirmed
                     : TrackStatus::kTentative;
  track.last_score = detection.score;
  return track;
}

TrackState Predict(const TrackState& state, double dt,
                   const TrackerConfig& config) {
  if (!(dt > 0.0)) throw ConfigError("prediction interval must be positive");
  StateCovariance transition = StateCovariance::Identity();
  transition.block<3, 3>(0, 7) = dt * Eigen::Matrix3d::Identity();

  StateVector q;
  const ProcessNoise& pn = config.process_noise;
  q << pn.position, pn.position, pn.position, pn.yaw, pn.extent, pn.extent,
      pn.extent, pn.velocity, pn.velocity, pn.velocity;

  TrackState next = state;
  next.mean = transition * state.mean;
  next.covariance = transition * state.covariance * transition.transpose();
  next.covariance.diagonal() += dt * q;
  Symmetrize(next.covariance);
  return next;
}

TrackState Update(const TrackState& state, const Detection& detection,
                  const TrackerConfig& config) {
  const MeasurementMatrix r = MeasurementCovariance(config.measurement_noise);
  const auto& p = state.covariance;
  // H selects the leading seven state components, so H P H^T and P H^T are
  // sub-blocks of P.
  MeasurementMatrix s = p.topLeftCorner<kMeasurementDim, kMeasurementDim>() + r;
  s.diagonal().array() += kInnovationJitter;
  const GainMatrix pht = p.leftCols<kMeasurementDim>();
  const GainMatrix gain = s.ldlt().solve(pht.transpose()).transpose();

  MeasurementVector innovation =
      MeasurementOf(detection.box) - state.mean.head<kMeasurementDim>();
  innovation(kYaw) = NormalizeYaw(innovation(kYaw));

  TrackState next = state;
  next.mean = state.mean + gain * innovation;
  next.mean(kYaw) = NormalizeYaw(next.mean(kYaw));

  // Joseph form keeps the posterior symmetric PSD.
  StateCovariance i_kh = StateCovariance::Identity();
  i_kh.leftCols<kMeasurementDim>() -= gain;
  next.covariance = i_kh * p * i_kh.transpose() + gain * r * gain.transpose();
  Symmetrize(next.covariance);

  next.hits = state.hits + 1;
  next.consecutive_misses = 0;
  next.last_score = detection.score;
  if (next.status == TrackStatus::kTentative &&
      next.hits >= config.min_hits_to_confirm) {
    next.status = TrackStatus::kConfirmed;
  }
  return next;
}

AssociationResult Associate(std::span<const TrackState> tracks,
                            std::span<const Detection> detections,
                            const TrackerConfig& config) {
  AssociationResult result;
  const int nt = static_cast<int>(tracks.size());
  const int nd = static_cast<int>(detections.size());
  Eigen::MatrixXd iou(nt, nd);
  for (int t = 0; t < nt; ++t) {
    const OrientedBox track_box = tracks[t].box();
    for (int d = 0; d < nd; ++d) {
      iou(t, d) =
          Similarity(config.association_metric, track_box, detections[d].box);
    }
  }
  result.matches = MaximizeScoreMatching(iou, config.gate_iou_min);
  std::vector<char> track_used(nt, 0), det_used(nd, 0);
  for (const auto& [t, d] : result.matches) {
    track_used[t] = 1;
    det_used[d] = 1;
  }
  for (int t = 0; t < nt; ++t) {
    if (!track_used[t]) result.unmatched_tracks.push_back(t);
  }
  for (int d = 0; d < nd; ++d) {
    if (!det_used[d]) result.unmatched_detections.push_back(d);
  }
  return result;
}

Tracker::Tracker(TrackerConfig config) : config_(std::move(config)) {
  config_.Validate();
}

FrameOutput Tracker::Step(
    int frame_index, std::optional<std::span<const Detection>> detections) {
  if (last_frame_.has_value() && frame_index <= *last_frame_) {
    throw ConfigError("frame " + std::to_string(frame_index) +
                      " does not follow frame " +
                      std::to_string(*last_frame_));
  }
  if (last_frame_.has_value()) {
    const double dt = config_.cycle_time * (frame_index - *last_frame_);
    for (TrackState& track : tracks_) track = Predict(track, dt, config_);
  }
  last_frame_ = frame_index;

  std::vector<char> updated(tracks_.size(), 0);
  if (detections.has_value()) {
    const AssociationResult assoc = Associate(tracks_, *detections, config_);
    for (const auto& [t, d] : assoc.matches) {
      tracks_[t] = Update(tracks_[t], (*detections)[d], config_);
      updated[t] = 1;
    }
    for (const int t : assoc.unmatched_tracks) {
      TrackState& track = tracks_[t];
      ++track.consecutive_misses;
      if (track.consecutive_misses >= config_.max_misses_to_delete) {
        track.status = TrackStatus::kDead;
      }
    }
    for (const int d : assoc.unmatched_detections) {
      tracks_.push_back(InitiateTrack(next_id_++, (*detections)[d], config_));
      updated.push_back(1);
    }
    ++processed_frames_;
    if (config_.confirm_during_warmup &&
        processed_frames_ <= config_.min_hits_to_confirm) {
      for (size_t i = 0; i < tracks_.size(); ++i) {
        if (updated[i] && tracks_[i].status == TrackStatus::kTentative) {
          tracks_[i].status = TrackStatus::kConfirmed;
        }
      }
    }
  }

  FrameOutput output;
  output.frame_index = frame_index;
  std::vector<TrackState> survivors;
  survivors.reserve(tracks_.size());
  for (size_t i = 0; i < tracks_.size(); ++i) {
    const TrackState& track = tracks_[i];
    if (track.status == TrackStatus::kDead) continue;
    if (track.status == TrackStatus::kConfirmed) {
      output.entries.push_back(
          {track.id, track.box(), track.last_score,
           updated[i] ? Provenance::kUpdated : Provenance::kPredicted});
    }
    survivors.push_back(track);
  }
  tracks_ = std::move(survivors);
  std::sort(output.entries.begin(), output.entries.end(),
            [](const FrameEntry& a, const FrameEntry& b) {
              return a.track_id < b.track_id;
            });
  return output;
}

}  // namespace framedrop
