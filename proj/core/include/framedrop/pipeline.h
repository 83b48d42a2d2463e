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

// Run orchestration: dataset -> detector on processed frames -> tracker on
// every frame -> metrics and energy, for one (variant, pattern) cell or the
// whole cross product.

#ifndef FRAMEDROP_PIPELINE_H_
#define FRAMEDROP_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framedrop/detector_sim.h"
#include "framedrop/energy.h"
#include "framedrop/kitti_io.h"
#include "framedrop/metrics.h"
#include "framedrop/scheduler.h"
#include "framedrop/tracker.h"

namespace framedrop {

enum class DetectorKind { kGroundTruth, kNoisy, kFile };

struct VariantSpec {
  std::string name;
  DetectorKind kind = DetectorKind::kGroundTruth;
  // kNoisy: profile name and resolved profile.
  std::string profile_name;
  NoiseProfile profile;
  // kFile: directory holding <sequence_id>.txt detection files.
  std::filesystem::path detections_dir;
  // Modeled draw. Ignored for patterns that have a measured power log.
  std::optional<EnergyParams> energy;
  // Pattern string ("n/m") -> measured power log CSV.
  std::map<std::string, std::filesystem::path> power_logs;
};

struct TrackerSettings {
  TrackerConfig base;
  // Unless min_hits_explicit: min_hits_to_confirm is 3 for nominal targets
  // >= 50% and 1 below.
  bool adaptive_min_hits = true;
  bool min_hits_explicit = false;
  // Pattern string -> partial TrackerConfig JSON applied last.
  std::map<std::string, nlohmann::json> overrides;
};

struct RunConfig {
  std::string dataset = "builtin:reference";
  ClassSet classes = DefaultClassSet();
  std::vector<VariantSpec> variants;
  std::vector<DropPattern> patterns;
  TrackerSettings tracker;
  MetricsConfig metrics;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  int jobs = 1;
  // Write per-sequence tracker outputs for every cell.
  bool write_outputs = true;
};

// Parses the JSON run configuration. Relative paths resolve against
// `base_dir`. Throws ConfigError on any schema violation.
RunConfig ParseRunConfig(const nlohmann::json& json,
                         const std::filesystem::path& base_dir = ".");
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Applies a partial TrackerConfig JSON object on top of `base`.
TrackerConfig ApplyTrackerJson(const nlohmann::json& json, TrackerConfig base);

// Effective tracker configuration for one pattern.
TrackerConfig TrackerConfigFor(const TrackerSettings& settings,
                               const DropPattern& pattern);

// Resolves config.dataset ("builtin:reference" or a KITTI directory).
std::vector<SequenceData> LoadDataset(const RunConfig& config);

struct MetricsRow {
  std::string variant;
  std::string pattern;  // "n/m"
  double target = 0.0;  // nominal percent
  double effective_target = 0.0;
  double hota = 0.0;
  double det_a = 0.0;
  double ass_a = 0.0;
  double mota = 0.0;
  double motp = 0.0;
  std::int64_t processed_frames = 0;
  std::int64_t total_frames = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t id_switches = 0;
  std::optional<double> draw_watts;
  std::optional<double> yield;
};

struct SequenceRun {
  std::string sequence_id;
  Schedule schedule;
  std::vector<FrameOutput> outputs;
};

struct CellResult {
  MetricsRow row;
  std::vector<SequenceRun> sequences;
};

// Runs one tracker pass of every sequence under `pattern`. Counts are pooled
// over sequences before scores are formed. yield is left unset.
CellResult RunOnce(const RunConfig& config, const VariantSpec& variant,
                   const DropPattern& pattern,
                   std::span<const SequenceData> dataset);

// Runs a single sequence; exposed for tests and tools.
SequenceRun RunSequence(const RunConfig& config, const VariantSpec& variant,
                        const Schedule& schedule, const SequenceData& sequence);

struct SweepReport {
  std::uint64_t seed = 0;
  std::string dataset;
  std::string similarity;
  std::vector<MetricsRow> rows;  // variants x patterns, in config order
};

// Fills in each non-baseline row's yield against the same variant's 1/1 row.
void ComputeYields(std::vector<MetricsRow>& rows);

// All cells of config.variants x config.patterns. A failing cell aborts the
// sweep; the error names the cell.
SweepReport RunSweep(const RunConfig& config,
                     std::span<const SequenceData> dataset);

nlohmann::json ReportToJson(const SweepReport& report);
SweepReport ReportFromJson(const nlohmann::json& json);

// sweep.csv, sweep.json, plot.csv (HOTA vs draw, long format) and yield.csv.
void WriteSweepReport(const SweepReport& report,
                      const std::filesystem::path& dir);
std::string FormatSweepCsv(const SweepReport& report);
std::string FormatPlotCsv(const SweepReport& report);
std::string FormatYieldCsv(const SweepReport& report);

// Human-readable table: one block per variant, one column per target.
std::string FormatReportTable(const SweepReport& report);

// Directory name for a cell's per-sequence outputs, e.g. "gt_9-10".
std::string CellDirectoryName(const std::string& variant,
                              const DropPattern& pattern);

}  // namespace framedrop

#endif  // FRAMEDROP_PIPELINE_H_
