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

#include "framedrop/kitti_io.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "framedrop/errors.h"

namespace framedrop {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kLabelColumns = 17;
constexpr int kScoredColumns = 18;

struct KittiRow {
  int frame = 0;
  int track_id = 0;
  std::string type;
  KittiBox box;
  std::optional<double> score;
};

int ParseIntField(const std::string& field, int line) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(field.c_str(), &end, 10);
  if (errno != 0 || end != field.c_str() + field.size() || field.empty()) {
    throw DatasetError("line " + std::to_string(line) +
                           ": invalid integer '" + field + "'",
                       line);
  }
  return static_cast<int>(value);
}

double ParseDoubleField(const std::string& field, int line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (errno != 0 || end != field.c_str() + field.size() || field.empty() ||
      !std::isfinite(value)) {
    throw DatasetError("line " + std::to_string(line) +
                           ": invalid number '" + field + "'",
                       line);
  }
  return value;
}

// Returns nullopt for blank lines.
std::optional<KittiRow> ParseRow(const std::string& text, int line) {
  std::istringstream tokens(text);
  std::vector<std::string> fields;
  for (std::string f; tokens >> f;) fields.push_back(std::move(f));
  if (fields.empty()) return std::nullopt;
  if (fields.size() != kLabelColumns && fields.size() != kScoredColumns) {
    throw DatasetError("line " + std::to_string(line) + ": expected " +
                           std::to_string(kLabelColumns) + " or " +
                           std::to_string(kScoredColumns) + " columns, got " +
                           std::to_string(fields.size()),
                       line);
  }
  KittiRow row;
  row.frame = ParseIntField(fields[0], line);
  row.track_id = ParseIntField(fields[1], line);
  row.type = fields[2];
  // truncated, occluded, alpha and the 2D box are validated but unused.
  for (int i = 3; i <= 9; ++i) ParseDoubleField(fields[i], line);
  row.box.height = ParseDoubleField(fields[10], line);
  row.box.width = ParseDoubleField(fields[11], line);
  row.box.length = ParseDoubleField(fields[12], line);
  row.box.x = ParseDoubleField(fields[13], line);
  row.box.y = ParseDoubleField(fields[14], line);
  row.box.z = ParseDoubleField(fields[15], line);
  row.box.rotation_y = ParseDoubleField(fields[16], line);
  if (fields.size() == kScoredColumns) {
    row.score = ParseDoubleField(fields[17], line);
  }
  if (row.frame < 0) {
    throw DatasetError("line " + std::to_string(line) + ": negative frame",
                       line);
  }
  return row;
}

// Applies the class filter. Returns nullopt for rows that are filtered out.
std::optional<ObjectClass> AcceptedClass(const KittiRow& row,
                                         const ClassSet& classes, int line) {
  const auto cls = ParseObjectClass(row.type);
  if (!cls.has_value()) {
    throw DatasetError("line " + std::to_string(line) + ": unknown type '" +
                           row.type + "'",
                       line);
  }
  if (*cls == ObjectClass::kDontCare || !classes.contains(*cls)) {
    return std::nullopt;
  }
  return cls;
}

OrientedBox CheckedBox(const KittiRow& row, int line) {
  if (!(row.box.height > 0.0 && row.box.width > 0.0 && row.box.length > 0.0)) {
    throw DatasetError(
        "line " + std::to_string(line) + ": box extents must be positive",
        line);
  }
  return KittiToGround(row.box);
}

template <typename RowVisitor>
void ForEachRow(std::istream& in, RowVisitor&& visit) {
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (auto row = ParseRow(text, line)) visit(*row, line);
  }
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

OrientedBox KittiToGround(const KittiBox& kitti) {
  OrientedBox box;
  box.cx = kitti.z;
  box.cy = -kitti.x;
  box.cz = 0.5 * kitti.height - kitti.y;
  box.length = kitti.length;
  box.width = kitti.width;
  box.height = kitti.height;
  box.yaw = NormalizeYaw(-kitti.rotation_y - 0.5 * std::numbers::pi);
  return box;
}

KittiBox GroundToKitti(const OrientedBox& box) {
  KittiBox kitti;
  kitti.height = box.height;
  kitti.width = box.width;
  kitti.length = box.length;
  kitti.x = -box.cy;
  kitti.y = 0.5 * box.height - box.cz;
  kitti.z = box.cx;
  kitti.rotation_y = NormalizeYaw(-box.yaw - 0.5 * std::numbers::pi);
  return kitti;
}

std::span<const LabeledObject> SequenceData::FrameLabels(
    int frame_index) const {
  const auto by_frame = [](const LabeledObject& a, const LabeledObject& b) {
    return a.frame_index < b.frame_index;
  };
  LabeledObject probe;
  probe.frame_index = frame_index;
  const auto [lo, hi] =
      std::equal_range(labels.begin(), labels.end(), probe, by_frame);
  return {lo, hi};
}

SequenceData ParseKittiLabels(std::istream& in, const ParseOptions& options) {
  SequenceData data;
  data.sequence_id = options.sequence_id;
  int max_frame = -1;
  std::set<std::pair<int, int>> seen;
  ForEachRow(in, [&](const KittiRow& row, int line) {
    max_frame = std::max(max_frame, row.frame);
    const auto cls = AcceptedClass(row, options.classes, line);
    if (!cls.has_value()) return;
    if (row.track_id < 0) {
      throw DatasetError(
          "line " + std::to_string(line) + ": negative track id", line);
    }
    if (!seen.emplace(row.frame, row.track_id).second) {
      throw DatasetError("line " + std::to_string(line) + ": duplicate track " +
                             std::to_string(row.track_id) + " in frame " +
                             std::to_string(row.frame),
                         line);
    }
    data.labels.push_back({row.frame, row.track_id, CheckedBox(row, line), *cls});
  });
  std::sort(data.labels.begin(), data.labels.end(),
            [](const LabeledObject& a, const LabeledObject& b) {
              return std::pair(a.frame_index, a.track_id) <
                     std::pair(b.frame_index, b.track_id);
            });
  if (options.frame_count.has_value()) {
    if (*options.frame_count < 1 || *options.frame_count <= max_frame) {
      throw DatasetError("sequence '" + options.sequence_id + "': length " +
                         std::to_string(*options.frame_count) +
                         " does not cover frame " + std::to_string(max_frame));
    }
    data.frame_count = *options.frame_count;
  } else if (max_frame >= 0) {
    data.frame_count = max_frame + 1;
  } else {
    throw DatasetError("sequence '" + options.sequence_id +
                       "' has no rows and no explicit length");
  }
  return data;
}

std::vector<std::vector<Detection>> ParseKittiDetections(
    std::istream& in, int frame_count, const ClassSet& classes) {
  std::vector<std::vector<Detection>> frames(frame_count);
  ForEachRow(in, [&](const KittiRow& row, int line) {
    const auto cls = AcceptedClass(row, classes, line);
    if (!cls.has_value()) return;
    if (!row.score.has_value()) {
      throw DatasetError(
          "line " + std::to_string(line) + ": detection needs a score", line);
    }
    if (row.frame >= frame_count) {
      throw DatasetError("line " + std::to_string(line) + ": frame " +
                             std::to_string(row.frame) + " out of range",
                         line);
    }
    frames[row.frame].push_back(
        {CheckedBox(row, line), std::clamp(*row.score, 0.0, 1.0), *cls});
  });
  return frames;
}

void WriteKittiRows(std::span<const FrameOutput> outputs, std::ostream& out) {
  char buffer[256];
  for (const FrameOutput& output : outputs) {
    for (const FrameEntry& entry : output.entries) {
      const KittiBox k = GroundToKitti(entry.box);
      std::snprintf(buffer, sizeof(buffer),
                    "%d %d Car 0 0 -10 0 0 0 0 %.6f %.6f %.6f %.6f %.6f %.6f "
                    "%.6f %.6f\n",
                    output.frame_index, entry.track_id, k.height, k.width,
                    k.length, k.x, k.y, k.z, k.rotation_y, entry.score);
      out << buffer;
    }
  }
}

void WriteFrameOutputs(std::span<const FrameOutput> outputs,
                       const std::string& sequence_id, int frame_count,
                       const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path rows_path = dir / (sequence_id + ".txt");
  const fs::path sidecar_path = dir / (sequence_id + ".provenance.json");
  std::ofstream rows(rows_path);
  if (!rows) throw DatasetError("cannot write " + rows_path.string());
  WriteKittiRows(outputs, rows);
  if (!rows) throw DatasetError("write failed: " + rows_path.string());

  json entries = json::array();
  for (const FrameOutput& output : outputs) {
    for (const FrameEntry& entry : output.entries) {
      entries.push_back({output.frame_index, entry.track_id,
                         ProvenanceName(entry.provenance)});
    }
  }
  const json sidecar = {{"sequence_id", sequence_id},
                        {"frame_count", frame_count},
                        {"entries", entries}};
  std::ofstream side(sidecar_path);
  if (!side) throw DatasetError("cannot write " + sidecar_path.string());
  side << sidecar.dump(1) << "\n";
  if (!side) throw DatasetError("write failed: " + sidecar_path.string());
}

std::vector<FrameOutput> ReadFrameOutputs(const fs::path& dir,
                                          const std::string& sequence_id) {
  const fs::path sidecar_path = dir / (sequence_id + ".provenance.json");
  json sidecar;
  try {
    sidecar = json::parse(Slurp(sidecar_path));
  } catch (const json::exception& e) {
    throw DatasetError(sidecar_path.string() + ": " + e.what());
  }
  int frame_count = 0;
  std::map<std::pair<int, int>, Provenance> provenance;
  try {
    frame_count = sidecar.at("frame_count").get<int>();
    for (const json& e : sidecar.at("entries")) {
      provenance[{e.at(0).get<int>(), e.at(1).get<int>()}] =
          ParseProvenance(e.at(2).get<std::string>());
    }
  } catch (const json::exception& e) {
    throw DatasetError(sidecar_path.string() + ": " + e.what());
  }
  std::vector<FrameOutput> outputs(frame_count);
  for (int f = 0; f < frame_count; ++f) outputs[f].frame_index = f;

  std::istringstream rows(Slurp(dir / (sequence_id + ".txt")));
  ForEachRow(rows, [&](const KittiRow& row, int line) {
    if (row.frame >= frame_count) {
      throw DatasetError("line " + std::to_string(line) + ": frame " +
                             std::to_string(row.frame) + " out of range",
                         line);
    }
    FrameEntry entry;
    entry.track_id = row.track_id;
    entry.box = CheckedBox(row, line);
    entry.score = row.score.value_or(1.0);
    const auto it = provenance.find({row.frame, row.track_id});
    if (it == provenance.end()) {
      throw DatasetError("line " + std::to_string(line) +
                             ": no provenance recorded for this entry",
                         line);
    }
    entry.provenance = it->second;
    outputs[row.frame].entries.push_back(entry);
  });
  for (FrameOutput& output : outputs) {
    std::sort(output.entries.begin(), output.entries.end(),
              [](const FrameEntry& a, const FrameEntry& b) {
                return a.track_id < b.track_id;
              });
  }
  return outputs;
}

std::map<std::string, int> ReadLengthManifest(const fs::path& path) {
  std::map<std::string, int> lengths;
  try {
    const json manifest = json::parse(Slurp(path));
    for (const auto& [id, length] : manifest.items()) {
      lengths[id] = length.get<int>();
    }
  } catch (const json::exception& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
  return lengths;
}

std::vector<SequenceData> LoadKittiDataset(const fs::path& dir,
                                           const ClassSet& classes) {
  if (!fs::is_directory(dir)) {
    throw DatasetError("dataset directory not found: " + dir.string());
  }
  const fs::path label_dir =
      fs::is_directory(dir / "label_02") ? dir / "label_02" : dir;
  std::map<std::string, int> lengths;
  if (fs::exists(dir / "manifest.json")) {
    lengths = ReadLengthManifest(dir / "manifest.json");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(label_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw DatasetError("no label files in " + label_dir.string());
  }
  std::vector<SequenceData> sequences;
  for (const fs::path& file : files) {
    ParseOptions options;
    options.sequence_id = file.stem().string();
    options.classes = classes;
    if (const auto it = lengths.find(options.sequence_id); it != lengths.end()) {
      options.frame_count = it->second;
    }
    std::ifstream in(file);
    if (!in) throw DatasetError("cannot open " + file.string());
    try {
      sequences.push_back(ParseKittiLabels(in, options));
    } catch (const DatasetError& e) {
      throw DatasetError(file.string() + ": " + e.what(), e.line());
    }
  }
  return sequences;
}

}  // namespace framedrop
