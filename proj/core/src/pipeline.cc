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

#include "framedrop/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <thread>

#include "framedrop/errors.h"
#include "framedrop/scenario.h"

namespace framedrop {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void CheckKeys(const json& object, std::initializer_list<const char*> allowed,
               const std::string& context) {
  if (!object.is_object()) {
    throw ConfigError(context + ": expected a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(context + ": unknown key '" + key + "'");
  }
}

template <typename T>
T Get(const json& object, const char* key, T fallback,
      const std::string& context) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(context + ": bad value for '" + key + "'");
  }
}

NoiseProfile ParseNoiseProfile(const json& j, const std::string& context) {
  CheckKeys(j,
            {"detection_probability", "false_positives_per_frame",
             "center_sigma", "extent_sigma", "yaw_sigma", "score_range",
             "rng_seed"},
            context);
  NoiseProfile p;
  p.detection_probability =
      Get(j, "detection_probability", p.detection_probability, context);
  p.false_positives_per_frame =
      Get(j, "false_positives_per_frame", p.false_positives_per_frame, context);
  p.center_sigma = Get(j, "center_sigma", p.center_sigma, context);
  p.extent_sigma = Get(j, "extent_sigma", p.extent_sigma, context);
  p.yaw_sigma = Get(j, "yaw_sigma", p.yaw_sigma, context);
  p.rng_seed = Get<std::uint64_t>(j, "rng_seed", p.rng_seed, context);
  if (j.contains("score_range")) {
    const auto range =
        Get<std::vector<double>>(j, "score_range", {}, context);
    if (range.size() != 2) {
      throw ConfigError(context + ": score_range needs [low, high]");
    }
    p.score_low = range[0];
    p.score_high = range[1];
  }
  p.Validate();
  return p;
}

EnergyParams ParseEnergyParams(const json& j, const std::string& context) {
  CheckKeys(j,
            {"preset", "idle_draw", "active_draw", "inference_time",
             "cycle_time"},
            context);
  EnergyParams p;
  if (j.contains("preset")) {
    p = EnergyPreset(Get<std::string>(j, "preset", "", context));
  }
  p.idle_draw = Get(j, "idle_draw", p.idle_draw, context);
  p.active_draw = Get(j, "active_draw", p.active_draw, context);
  p.inference_time = Get(j, "inference_time", p.inference_time, context);
  p.cycle_time = Get(j, "cycle_time", p.cycle_time, context);
  p.Validate();
  return p;
}

DropPattern PatternFromJson(const json& j) {
  if (j.is_number_integer()) return PatternForTarget(j.get<int>());
  if (j.is_string()) return ParsePattern(j.get<std::string>());
  throw ConfigError("patterns: expected \"n/m\" strings or integer targets");
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::uint64_t MixSeed(std::uint64_t run_seed, std::uint64_t profile_seed) {
  std::uint64_t x = run_seed * 0x9e3779b97f4a7c15ULL + profile_seed;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string FormatNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string FormatOptional(const std::optional<double>& value) {
  return value.has_value() ? FormatNumber(*value) : "";
}

std::string FormatTarget(double target) {
  char buffer[32];
  if (target == static_cast<int>(target)) {
    std::snprintf(buffer, sizeof(buffer), "%d", static_cast<int>(target));
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.2f", target);
  }
  return buffer;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << text;
  if (!out) throw DatasetError("write failed: " + path.string());
}

json OptionalToJson(const std::optional<double>& value) {
  return value.has_value() ? json(*value) : json(nullptr);
}

std::optional<double> OptionalFromJson(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

}  // namespace

TrackerConfig ApplyTrackerJson(const json& j, TrackerConfig c) {
  const std::string ctx = "tracker";
  CheckKeys(j,
            {"cycle_time", "min_hits_to_confirm", "max_misses_to_delete",
             "gate_iou_min", "association_metric", "process_noise",
             "measurement_noise", "initial_velocity_variance",
             "confirm_during_warmup", "adaptive_min_hits", "overrides"},
            ctx);
  c.cycle_time = Get(j, "cycle_time", c.cycle_time, ctx);
  c.min_hits_to_confirm =
      Get(j, "min_hits_to_confirm", c.min_hits_to_confirm, ctx);
  c.max_misses_to_delete =
      Get(j, "max_misses_to_delete", c.max_misses_to_delete, ctx);
  c.gate_iou_min = Get(j, "gate_iou_min", c.gate_iou_min, ctx);
  c.initial_velocity_variance =
      Get(j, "initial_velocity_variance", c.initial_velocity_variance, ctx);
  c.confirm_during_warmup =
      Get(j, "confirm_during_warmup", c.confirm_during_warmup, ctx);
  if (j.contains("association_metric")) {
    c.association_metric = ParseSimilarityMetric(
        Get<std::string>(j, "association_metric", "", ctx));
  }
  if (j.contains("process_noise")) {
    const json& q = j.at("process_noise");
    CheckKeys(q, {"position", "yaw", "extent", "velocity"}, "process_noise");
    c.process_noise.position =
        Get(q, "position", c.process_noise.position, ctx);
    c.process_noise.yaw = Get(q, "yaw", c.process_noise.yaw, ctx);
    c.process_noise.extent = Get(q, "extent", c.process_noise.extent, ctx);
    c.process_noise.velocity =
        Get(q, "velocity", c.process_noise.velocity, ctx);
  }
  if (j.contains("measurement_noise")) {
    const json& r = j.at("measurement_noise");
    CheckKeys(r, {"position", "yaw", "extent"}, "measurement_noise");
    c.measurement_noise.position =
        Get(r, "position", c.measurement_noise.position, ctx);
    c.measurement_noise.yaw = Get(r, "yaw", c.measurement_noise.yaw, ctx);
    c.measurement_noise.extent =
        Get(r, "extent", c.measurement_noise.extent, ctx);
  }
  c.Validate();
  return c;
}

RunConfig ParseRunConfig(const json& j, const fs::path& base_dir) {
  CheckKeys(j,
            {"dataset", "classes", "variants", "noise_profiles", "patterns",
             "tracker", "metrics", "output_dir", "seed", "jobs",
             "write_outputs"},
            "config");
  RunConfig config;
  const std::string dataset = Get<std::string>(j, "dataset", config.dataset,
                                               "config");
  config.dataset = dataset.rfind("builtin:", 0) == 0
                       ? dataset
                       : Resolve(base_dir, dataset).string();
  config.seed = Get<std::uint64_t>(j, "seed", config.seed, "config");
  config.jobs = Get(j, "jobs", config.jobs, "config");
  if (config.jobs < 1) throw ConfigError("config: jobs must be >= 1");
  config.write_outputs = Get(j, "write_outputs", config.write_outputs,
                             "config");
  config.output_dir =
      Resolve(base_dir, Get<std::string>(j, "output_dir", "out", "config"));

  if (j.contains("classes")) {
    config.classes.clear();
    for (const auto& name :
         Get<std::vector<std::string>>(j, "classes", {}, "config")) {
      const auto cls = ParseObjectClass(name);
      if (!cls.has_value() || *cls == ObjectClass::kDontCare) {
        throw ConfigError("config: unknown class '" + name + "'");
      }
      config.classes.insert(*cls);
    }
    if (config.classes.empty()) throw ConfigError("config: empty class set");
  }

  std::map<std::string, NoiseProfile> profiles;
  if (j.contains("noise_profiles")) {
    const json& np = j.at("noise_profiles");
    if (!np.is_object()) throw ConfigError("noise_profiles: expected object");
    for (const auto& [name, value] : np.items()) {
      profiles[name] = ParseNoiseProfile(value, "noise profile '" + name + "'");
    }
  }

  const json patterns = j.value("patterns", json::array());
  if (!patterns.is_array() || patterns.empty()) {
    throw ConfigError("config: at least one pattern is required");
  }
  for (const json& p : patterns) config.patterns.push_back(PatternFromJson(p));

  const json variants = j.value("variants", json::array());
  if (!variants.is_array() || variants.empty()) {
    throw ConfigError("config: at least one variant is required");
  }
  std::set<std::string> names;
  for (const json& v : variants) {
    const std::string ctx = "variant";
    CheckKeys(v, {"name", "detector", "energy", "power_logs"}, ctx);
    VariantSpec spec;
    spec.name = Get<std::string>(v, "name", "", ctx);
    if (spec.name.empty()) throw ConfigError("variant: name is required");
    if (!names.insert(spec.name).second) {
      throw ConfigError("variant '" + spec.name + "' defined twice");
    }
    const std::string detector = Get<std::string>(v, "detector", "gt", ctx);
    if (detector == "gt") {
      spec.kind = DetectorKind::kGroundTruth;
    } else if (detector.rfind("noisy:", 0) == 0) {
      spec.kind = DetectorKind::kNoisy;
      spec.profile_name = detector.substr(6);
      const auto it = profiles.find(spec.profile_name);
      if (it == profiles.end()) {
        throw ConfigError("variant '" + spec.name + "': undefined profile '" +
                          spec.profile_name + "'");
      }
      spec.profile = it->second;
    } else if (detector.rfind("file:", 0) == 0) {
      spec.kind = DetectorKind::kFile;
      spec.detections_dir = Resolve(base_dir, detector.substr(5));
    } else {
      throw ConfigError("variant '" + spec.name + "': unknown detector '" +
                        detector + "'");
    }
    if (v.contains("energy")) {
      spec.energy = ParseEnergyParams(v.at("energy"), "variant energy");
    }
    if (v.contains("power_logs")) {
      const json& logs = v.at("power_logs");
      if (!logs.is_object()) throw ConfigError("power_logs: expected object");
      for (const auto& [pattern, path] : logs.items()) {
        spec.power_logs[ParsePattern(pattern).ToString()] =
            Resolve(base_dir, path.get<std::string>());
      }
    }
    config.variants.push_back(std::move(spec));
  }

  if (j.contains("tracker")) {
    const json& t = j.at("tracker");
    config.tracker.base = ApplyTrackerJson(t, config.tracker.base);
    config.tracker.min_hits_explicit = t.contains("min_hits_to_confirm");
    config.tracker.adaptive_min_hits =
        Get(t, "adaptive_min_hits", config.tracker.adaptive_min_hits,
            "tracker");
    if (t.contains("overrides")) {
      const json& overrides = t.at("overrides");
      if (!overrides.is_object()) {
        throw ConfigError("tracker.overrides: expected object");
      }
      for (const auto& [pattern, value] : overrides.items()) {
        // Validate eagerly so bad overrides fail at load time.
        ApplyTrackerJson(value, config.tracker.base);
        config.tracker.overrides[ParsePattern(pattern).ToString()] = value;
      }
    }
  }
  if (j.contains("metrics")) {
    const json& m = j.at("metrics");
    CheckKeys(m, {"similarity", "clear_threshold"}, "metrics");
    if (m.contains("similarity")) {
      config.metrics.similarity = ParseSimilarityMetric(
          Get<std::string>(m, "similarity", "", "metrics"));
    }
    config.metrics.clear_threshold = Get(m, "clear_threshold",
                                         config.metrics.clear_threshold,
                                         "metrics");
    if (!(config.metrics.clear_threshold > 0.0 &&
          config.metrics.clear_threshold <= 1.0)) {
      throw ConfigError("metrics: clear_threshold must lie in (0, 1]");
    }
  }
  return config;
}

RunConfig LoadRunConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ParseRunConfig(j, path.parent_path());
}

TrackerConfig TrackerConfigFor(const TrackerSettings& settings,
                               const DropPattern& pattern) {
  TrackerConfig config = settings.base;
  if (settings.adaptive_min_hits && !settings.min_hits_explicit) {
    config.min_hits_to_confirm = pattern.nominal_target() >= 50.0 ? 3 : 1;
  }
  const auto it = settings.overrides.find(pattern.ToString());
  if (it != settings.overrides.end()) {
    config = ApplyTrackerJson(it->second, config);
  }
  return config;
}

std::vector<SequenceData> LoadDataset(const RunConfig& config) {
  if (config.dataset == kReferenceDatasetName) {
    SequenceData reference = ReferenceScenario();
    std::erase_if(reference.labels, [&](const LabeledObject& l) {
      return !config.classes.contains(l.class_label);
    });
    return {std::move(reference)};
  }
  if (config.dataset.rfind("builtin:", 0) == 0) {
    throw ConfigError("unknown builtin dataset '" + config.dataset + "'");
  }
  return LoadKittiDataset(config.dataset, config.classes);
}

SequenceRun RunSequence(const RunConfig& config, const VariantSpec& variant,
                        const Schedule& schedule,
                        const SequenceData& sequence) {
  if (schedule.sequence_length() != sequence.frame_count) {
    throw ConfigError("schedule length does not match sequence '" +
                      sequence.sequence_id + "'");
  }
  const TrackerConfig tracker_config =
      TrackerConfigFor(config.tracker, schedule.pattern());
  Tracker tracker(tracker_config);

  NoiseProfile profile = variant.profile;
  profile.rng_seed = MixSeed(config.seed, profile.rng_seed);
  SceneContext scene;
  if (variant.kind == DetectorKind::kNoisy) {
    scene = SceneContext::FromLabels(sequence.sequence_id, sequence.labels,
                                     config.classes);
  }
  std::optional<std::vector<std::vector<Detection>>> file_detections;
  if (variant.kind == DetectorKind::kFile) {
    const fs::path path =
        variant.detections_dir / (sequence.sequence_id + ".txt");
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open detections " + path.string());
    file_detections =
        ParseKittiDetections(in, sequence.frame_count, config.classes);
  }

  SequenceRun run{sequence.sequence_id, schedule, {}};
  run.outputs.reserve(sequence.frame_count);
  for (int f = 0; f < sequence.frame_count; ++f) {
    if (!schedule.processed(f)) {
      run.outputs.push_back(tracker.StepDropped(f));
      continue;
    }
    const auto labels = sequence.FrameLabels(f);
    std::vector<Detection> detections;
    switch (variant.kind) {
      case DetectorKind::kGroundTruth:
        detections = GtDetect(labels, config.classes);
        break;
      case DetectorKind::kNoisy:
        detections = NoisyDetect(labels, profile, scene, f, config.classes);
        break;
      case DetectorKind::kFile:
        detections = (*file_detections)[f];
        break;
    }
    run.outputs.push_back(tracker.StepProcessed(f, detections));
  }
  return run;
}

CellResult RunOnce(const RunConfig& config, const VariantSpec& variant,
                   const DropPattern& pattern,
                   std::span<const SequenceData> dataset) {
  CellResult result;
  ClearCounts clear;
  HotaCounts hota;
  std::vector<Schedule> schedules;
  for (const SequenceData& sequence : dataset) {
    const Schedule schedule = BuildSchedule(pattern, sequence.frame_count);
    SequenceRun run = [&] {
      try {
        return RunSequence(config, variant, schedule, sequence);
      } catch (const DatasetError& e) {
        throw DatasetError(
            "sequence '" + sequence.sequence_id + "': " + e.what(), e.line());
      }
    }();
    const EvalSequence eval =
        BuildEvalSequence(sequence.labels, run.outputs,
                          config.metrics.similarity);
    clear += AccumulateClear(eval, config.metrics.clear_threshold);
    hota += AccumulateHota(eval);
    result.row.processed_frames += ProcessedCount(schedule);
    result.row.total_frames += schedule.sequence_length();
    schedules.push_back(schedule);
    result.sequences.push_back(std::move(run));
  }

  MetricsRow& row = result.row;
  row.variant = variant.name;
  row.pattern = pattern.ToString();
  row.target = pattern.nominal_target();
  row.effective_target =
      row.total_frames > 0
          ? 100.0 * static_cast<double>(row.processed_frames) / row.total_frames
          : 0.0;
  const ClearResult clear_result = SummarizeClear(clear);
  const HotaResult hota_result = SummarizeHota(hota);
  row.hota = hota_result.hota;
  row.det_a = hota_result.det_a;
  row.ass_a = hota_result.ass_a;
  row.mota = clear_result.mota;
  row.motp = clear_result.motp;
  row.tp = clear_result.tp;
  row.fp = clear_result.fp;
  row.fn = clear_result.fn;
  row.id_switches = clear_result.id_switches;

  const auto log = variant.power_logs.find(row.pattern);
  if (log != variant.power_logs.end()) {
    std::ifstream in(log->second);
    if (!in) throw DatasetError("cannot open power log " + log->second.string());
    row.draw_watts = SummarizePowerLog(ReadPowerLogCsv(in));
  } else if (variant.energy.has_value()) {
    row.draw_watts = EstimateDraw(*variant.energy, schedules);
  }
  return result;
}

void ComputeYields(std::vector<MetricsRow>& rows) {
  std::map<std::string, const MetricsRow*> baselines;
  for (const MetricsRow& row : rows) {
    if (row.pattern == "1/1") baselines.emplace(row.variant, &row);
  }
  for (MetricsRow& row : rows) {
    row.yield.reset();
    if (row.pattern == "1/1") continue;
    const auto it = baselines.find(row.variant);
    if (it == baselines.end()) continue;
    const MetricsRow& base = *it->second;
    if (!base.draw_watts.has_value() || !row.draw_watts.has_value()) continue;
    if (base.hota == row.hota) continue;
    row.yield = YieldMetric({*base.draw_watts, base.hota},
                            {*row.draw_watts, row.hota})
                    .yield_value;
  }
}

SweepReport RunSweep(const RunConfig& config,
                     std::span<const SequenceData> dataset) {
  struct Cell {
    const VariantSpec* variant;
    DropPattern pattern;
  };
  std::vector<Cell> cells;
  for (const VariantSpec& variant : config.variants) {
    for (const DropPattern& pattern : config.patterns) {
      cells.push_back({&variant, pattern});
    }
  }
  std::vector<std::optional<MetricsRow>> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};

  const auto worker = [&] {
    for (size_t i = next++; i < cells.size() && !failed; i = next++) {
      try {
        CellResult result =
            RunOnce(config, *cells[i].variant, cells[i].pattern, dataset);
        if (config.write_outputs) {
          const fs::path dir =
              config.output_dir / "cells" /
              CellDirectoryName(cells[i].variant->name, cells[i].pattern);
          for (const SequenceRun& run : result.sequences) {
            WriteFrameOutputs(run.outputs, run.sequence_id,
                              run.schedule.sequence_length(), dir);
          }
        }
        rows[i] = std::move(result.row);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, cells.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  for (size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i]) continue;
    const std::string cell =
        "cell " + cells[i].variant->name + "@" + cells[i].pattern.ToString() +
        ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError& e) {
      throw ConfigError(cell + e.what());
    } catch (const DatasetError& e) {
      throw DatasetError(cell + e.what(), e.line());
    } catch (const std::exception& e) {
      throw ComputationError(cell + e.what());
    }
  }

  SweepReport report;
  report.seed = config.seed;
  report.dataset = config.dataset;
  report.similarity = std::string(SimilarityMetricName(config.metrics.similarity));
  for (auto& row : rows) report.rows.push_back(std::move(*row));
  ComputeYields(report.rows);
  return report;
}

json ReportToJson(const SweepReport& report) {
  json rows = json::array();
  for (const MetricsRow& r : report.rows) {
    rows.push_back({
        {"variant", r.variant},
        {"pattern", r.pattern},
        {"target", r.target},
        {"effective_target", r.effective_target},
        {"hota", r.hota},
        {"det_a", r.det_a},
        {"ass_a", r.ass_a},
        {"mota", r.mota},
        {"motp", r.motp},
        {"processed_frames", r.processed_frames},
        {"total_frames", r.total_frames},
        {"tp", r.tp},
        {"fp", r.fp},
        {"fn", r.fn},
        {"id_switches", r.id_switches},
        {"draw_w", OptionalToJson(r.draw_watts)},
        {"yield_w_per_pt", OptionalToJson(r.yield)},
    });
  }
  return {{"seed", report.seed},
          {"dataset", report.dataset},
          {"similarity", report.similarity},
          {"rows", rows}};
}

SweepReport ReportFromJson(const json& j) {
  SweepReport report;
  try {
    report.seed = j.value<std::uint64_t>("seed", 0);
    report.dataset = j.value("dataset", "");
    report.similarity = j.value("similarity", "");
    for (const json& r : j.at("rows")) {
      MetricsRow row;
      row.variant = r.at("variant").get<std::string>();
      row.pattern = r.at("pattern").get<std::string>();
      row.target = r.at("target").get<double>();
      row.effective_target = r.at("effective_target").get<double>();
      row.hota = r.at("hota").get<double>();
      row.det_a = r.at("det_a").get<double>();
      row.ass_a = r.at("ass_a").get<double>();
      row.mota = r.at("mota").get<double>();
      row.motp = r.at("motp").get<double>();
      row.processed_frames = r.at("processed_frames").get<std::int64_t>();
      row.total_frames = r.at("total_frames").get<std::int64_t>();
      row.tp = r.value<std::int64_t>("tp", 0);
      row.fp = r.value<std::int64_t>("fp", 0);
      row.fn = r.value<std::int64_t>("fn", 0);
      row.id_switches = r.value<std::int64_t>("id_switches", 0);
      row.draw_watts = OptionalFromJson(r, "draw_w");
      row.yield = OptionalFromJson(r, "yield_w_per_pt");
      report.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw DatasetError(std::string("sweep report: ") + e.what());
  }
  return report;
}

std::string FormatSweepCsv(const SweepReport& report) {
  std::ostringstream out;
  out << "variant,pattern,target,effective_target,hota,det_a,ass_a,mota,motp,"
         "processed_frames,draw_w,yield_w_per_pt\n";
  for (const MetricsRow& r : report.rows) {
    out << r.variant << ',' << r.pattern << ',' << FormatTarget(r.target)
        << ',' << FormatNumber(r.effective_target) << ','
        << FormatNumber(r.hota) << ',' << FormatNumber(r.det_a) << ','
        << FormatNumber(r.ass_a) << ',' << FormatNumber(r.mota) << ','
        << FormatNumber(r.motp) << ',' << r.processed_frames << ','
        << FormatOptional(r.draw_watts) << ',' << FormatOptional(r.yield)
        << '\n';
  }
  return out.str();
}

std::string FormatPlotCsv(const SweepReport& report) {
  std::ostringstream out;
  out << "variant,target,draw_w,hota\n";
  for (const MetricsRow& r : report.rows) {
    out << r.variant << ',' << FormatTarget(r.target) << ','
        << FormatOptional(r.draw_watts) << ',' << FormatNumber(r.hota) << '\n';
  }
  return out.str();
}

std::string FormatYieldCsv(const SweepReport& report) {
  std::ostringstream out;
  out << "variant,target,draw_w,hota,yield_w_per_pt\n";
  for (const MetricsRow& r : report.rows) {
    out << r.variant << ',' << FormatTarget(r.target) << ','
        << FormatOptional(r.draw_watts) << ',' << FormatNumber(r.hota) << ','
        << FormatOptional(r.yield) << '\n';
  }
  return out.str();
}

void WriteSweepReport(const SweepReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteText(dir / "sweep.csv", FormatSweepCsv(report));
  WriteText(dir / "sweep.json", ReportToJson(report).dump(2) + "\n");
  WriteText(dir / "plot.csv", FormatPlotCsv(report));
  WriteText(dir / "yield.csv", FormatYieldCsv(report));
}

std::string FormatReportTable(const SweepReport& report) {
  std::vector<std::string> variants;
  for (const MetricsRow& r : report.rows) {
    if (std::find(variants.begin(), variants.end(), r.variant) ==
        variants.end()) {
      variants.push_back(r.variant);
    }
  }
  std::ostringstream out;
  char cell[32];
  for (const std::string& variant : variants) {
    std::vector<const MetricsRow*> rows;
    for (const MetricsRow& r : report.rows) {
      if (r.variant == variant) rows.push_back(&r);
    }
    out << variant << "\n";
    const auto line = [&](const char* label, auto value_of) {
      std::snprintf(cell, sizeof(cell), "  %-12s", label);
      out << cell;
      for (const MetricsRow* r : rows) {
        std::snprintf(cell, sizeof(cell), "%9s", value_of(*r).c_str());
        out << cell;
      }
      out << "\n";
    };
    const auto fixed1 = [](double v) {
      char b[32];
      std::snprintf(b, sizeof(b), "%.1f", v);
      return std::string(b);
    };
    const auto opt1 = [&](const std::optional<double>& v) {
      return v.has_value() ? fixed1(*v) : std::string("-");
    };
    line("target", [](const MetricsRow& r) { return FormatTarget(r.target); });
    line("MOTA", [&](const MetricsRow& r) { return fixed1(r.mota); });
    line("MOTP", [&](const MetricsRow& r) { return fixed1(r.motp); });
    line("HOTA", [&](const MetricsRow& r) { return fixed1(r.hota); });
    line("DetA", [&](const MetricsRow& r) { return fixed1(r.det_a); });
    line("AssA", [&](const MetricsRow& r) { return fixed1(r.ass_a); });
    line("draw [W]", [&](const MetricsRow& r) { return opt1(r.draw_watts); });
    line("yield", [&](const MetricsRow& r) { return opt1(r.yield); });
  }
  return out.str();
}

std::string CellDirectoryName(const std::string& variant,
                              const DropPattern& pattern) {
  return variant + "_" + std::to_string(pattern.n()) + "-" +
         std::to_string(pattern.m());
}

}  // namespace framedrop
