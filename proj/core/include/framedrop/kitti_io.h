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

// KITTI tracking text format.
//
// Each row: frame track_id type truncated occluded alpha bbox_left bbox_top
// bbox_right bbox_bottom height width length x y z rotation_y [score].
//
// KITTI boxes live in the camera frame (x right, y down, z forward) with the
// location at the bottom face center. They are converted once, here, to the
// ground frame used everywhere else (x forward, y left, z up, center
// anchored):
//
//   cx = z_cam,  cy = -x_cam,  cz = height / 2 - y_cam,
//   yaw = -rotation_y - pi/2   (normalized to (-pi, pi]).

#ifndef FRAMEDROP_KITTI_IO_H_
#define FRAMEDROP_KITTI_IO_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "framedrop/detector_sim.h"
#include "framedrop/geometry.h"
#include "framedrop/tracker.h"

namespace framedrop {

struct KittiBox {
  double height = 0.0;
  double width = 0.0;
  double length = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double rotation_y = 0.0;
};

OrientedBox KittiToGround(const KittiBox& kitti);
KittiBox GroundToKitti(const OrientedBox& box);

struct SequenceData {
  std::string sequence_id;
  int frame_count = 0;
  // Sorted by (frame_index, track_id).
  std::vector<LabeledObject> labels;
  // Optional precomputed detections, indexed by frame.
  std::optional<std::vector<std::vector<Detection>>> detections;

  std::span<const LabeledObject> FrameLabels(int frame_index) const;
};

struct ParseOptions {
  std::string sequence_id;
  ClassSet classes = DefaultClassSet();
  // Overrides 1 + max frame index, which misses empty trailing frames.
  std::optional<int> frame_count;
};

// Rows of other classes and DontCare rows are skipped; any other malformed
// row throws DatasetError carrying its line number. Rows may come in any
// frame order.
SequenceData ParseKittiLabels(std::istream& in, const ParseOptions& options);

// Detection files use the same layout; track ids are ignored and the score
// column is required.
std::vector<std::vector<Detection>> ParseKittiDetections(
    std::istream& in, int frame_count, const ClassSet& classes);

// Track boxes as KITTI rows with the score column filled in.
void WriteKittiRows(std::span<const FrameOutput> outputs, std::ostream& out);

// Writes <dir>/<sequence_id>.txt and the provenance sidecar
// <dir>/<sequence_id>.provenance.json. Throws DatasetError if the files
// cannot be written.
void WriteFrameOutputs(std::span<const FrameOutput> outputs,
                       const std::string& sequence_id, int frame_count,
                       const std::filesystem::path& dir);

// Inverse of WriteFrameOutputs: one FrameOutput per frame of the sequence.
std::vector<FrameOutput> ReadFrameOutputs(const std::filesystem::path& dir,
                                          const std::string& sequence_id);

// JSON object mapping sequence id to frame count.
std::map<std::string, int> ReadLengthManifest(
    const std::filesystem::path& path);

// Loads every <id>.txt label file in `dir` (or `dir`/label_02 if present),
// sorted by id. Frame counts come from `dir`/manifest.json when present.
std::vector<SequenceData> LoadKittiDataset(const std::filesystem::path& dir,
                                           const ClassSet& classes);

}  // namespace framedrop

#endif  // FRAMEDROP_KITTI_IO_H_
