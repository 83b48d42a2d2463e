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

// framedrop: run, sweep, evaluate and report frame-dropping tracking runs.
//
//   framedrop sweep --config configs/reference_sweep.json --out out/
//   framedrop run --target 50 --variant gt
//   framedrop eval --labels data/ --outputs out/cells/gt_1-2
//   framedrop energy --log power.csv
//   framedrop energy --preset second --pattern 1/2 --length 1000
//   framedrop report --in out/sweep.json

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "framedrop/errors.h"
#include "framedrop/pipeline.h"
#include "framedrop/scenario.h"

namespace {

namespace fs = std::filesystem;
using namespace framedrop;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDataset = 3;
constexpr int kExitComputation = 4;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> patterns;
  std::vector<int> targets;
  std::vector<std::string> variants;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<int> jobs;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags, bool single_cell) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  auto* pattern =
      cmd->add_option("--pattern", flags.patterns, "drop pattern n/m");
  auto* target = cmd->add_option("--target", flags.targets,
                                 "processing target in percent")
                     ->check(CLI::IsMember({100, 90, 75, 50, 25, 10}));
  cmd->add_option("--variant", flags.variants, "detector variant name");
  cmd->add_option("--seed", flags.seed, "run seed");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--jobs", flags.jobs, "parallel cells")
      ->check(CLI::PositiveNumber);
  if (single_cell) {
    pattern->expected(1);
    target->expected(1);
    pattern->excludes(target);
  }
}

// Built-in configuration used when --config is omitted: the reference
// scenario, the gt variant and all six named targets.
nlohmann::json DefaultConfigJson() {
  nlohmann::json patterns = nlohmann::json::array();
  for (const NamedTarget& t : kNamedTargets) {
    patterns.push_back(std::to_string(t.n) + "/" + std::to_string(t.m));
  }
  return {{"dataset", kReferenceDatasetName},
          {"patterns", patterns},
          {"variants", {{{"name", "gt"}, {"detector", "gt"}}}}};
}

RunConfig ResolveConfig(const CommonFlags& flags) {
  RunConfig config = flags.config_path.empty()
                         ? ParseRunConfig(DefaultConfigJson())
                         : LoadRunConfig(flags.config_path);
  if (!flags.patterns.empty() || !flags.targets.empty()) {
    config.patterns.clear();
    for (const std::string& p : flags.patterns) {
      config.patterns.push_back(ParsePattern(p));
    }
    for (int t : flags.targets) config.patterns.push_back(PatternForTarget(t));
  }
  if (!flags.variants.empty()) {
    std::vector<VariantSpec> selected;
    for (const std::string& name : flags.variants) {
      const auto it =
          std::find_if(config.variants.begin(), config.variants.end(),
                       [&](const VariantSpec& v) { return v.name == name; });
      if (it == config.variants.end()) {
        throw ConfigError("no variant named '" + name + "'");
      }
      selected.push_back(*it);
    }
    config.variants = std::move(selected);
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.jobs) config.jobs = *flags.jobs;
  if (!flags.out_dir.empty()) config.output_dir = flags.out_dir;
  return config;
}

int RunCell(const CommonFlags& flags) {
  RunConfig config = ResolveConfig(flags);
  if (config.patterns.size() != 1) {
    throw ConfigError("run needs exactly one --pattern or --target");
  }
  if (config.variants.size() != 1 && flags.variants.empty()) {
    config.variants.resize(1);
  }
  const auto dataset = LoadDataset(config);
  CellResult cell =
      RunOnce(config, config.variants.front(), config.patterns.front(),
              dataset);
  if (config.write_outputs) {
    const fs::path dir =
        config.output_dir / "cells" /
        CellDirectoryName(cell.row.variant, config.patterns.front());
    for (const SequenceRun& run : cell.sequences) {
      WriteFrameOutputs(run.outputs, run.sequence_id,
                        run.schedule.sequence_length(), dir);
    }
    std::cerr << "outputs written to " << dir.string() << "\n";
  }
  SweepReport report;
  report.seed = config.seed;
  report.dataset = config.dataset;
  report.similarity =
      std::string(SimilarityMetricName(config.metrics.similarity));
  report.rows.push_back(cell.row);
  std::cout << FormatSweepCsv(report);
  return kExitOk;
}

int RunSweepCommand(const CommonFlags& flags) {
  const RunConfig config = ResolveConfig(flags);
  const auto dataset = LoadDataset(config);
  const SweepReport report = RunSweep(config, dataset);
  WriteSweepReport(report, config.output_dir);
  std::cout << FormatReportTable(report);
  std::cerr << "reports written to " << config.output_dir.string() << "\n";
  return kExitOk;
}

struct EvalFlags {
  std::string labels_dir;
  std::string outputs_dir;
  std::string similarity = "3d-iou";
  double threshold = 0.5;
  std::vector<std::string> classes = {"Car"};
};

int RunEval(const EvalFlags& flags) {
  MetricsConfig metrics;
  metrics.similarity = ParseSimilarityMetric(flags.similarity);
  metrics.clear_threshold = flags.threshold;
  ClassSet classes;
  for (const std::string& name : flags.classes) {
    const auto cls = ParseObjectClass(name);
    if (!cls) throw ConfigError("unknown class '" + name + "'");
    classes.insert(*cls);
  }
  std::vector<SequenceData> dataset;
  if (flags.labels_dir == kReferenceDatasetName) {
    dataset.push_back(ReferenceScenario());
  } else {
    dataset = LoadKittiDataset(flags.labels_dir, classes);
  }
  ClearCounts clear;
  HotaCounts hota;
  for (const SequenceData& sequence : dataset) {
    const auto outputs = ReadFrameOutputs(flags.outputs_dir,
                                          sequence.sequence_id);
    const EvalSequence eval =
        BuildEvalSequence(sequence.labels, outputs, metrics.similarity);
    clear += AccumulateClear(eval, metrics.clear_threshold);
    hota += AccumulateHota(eval);
  }
  const ClearResult c = SummarizeClear(clear);
  const HotaResult h = SummarizeHota(hota);
  std::printf("sequences %zu\n", dataset.size());
  std::printf("HOTA  %.4f\nDetA  %.4f\nAssA  %.4f\n", h.hota, h.det_a,
              h.ass_a);
  std::printf("MOTA  %.4f\nMOTP  %.4f\n", c.mota, c.motp);
  std::printf("TP %lld  FP %lld  FN %lld  IDSW %lld\n",
              static_cast<long long>(c.tp), static_cast<long long>(c.fp),
              static_cast<long long>(c.fn),
              static_cast<long long>(c.id_switches));
  return kExitOk;
}

struct EnergyFlags {
  std::string log_path;
  std::string preset;
  std::optional<double> idle_draw;
  std::optional<double> active_draw;
  std::optional<double> inference_time;
  double cycle_time = 0.1;
  std::string pattern = "1/1";
  int length = 1000;
};

int RunEnergy(const EnergyFlags& flags) {
  if (!flags.log_path.empty()) {
    std::ifstream in(flags.log_path);
    if (!in) throw DatasetError("cannot open " + flags.log_path);
    const PowerLog log = ReadPowerLogCsv(in);
    std::printf("samples %zu\nsample_rate_hz %.4f\nmedian_draw_w %.4f\n",
                log.samples.size(), log.sample_rate, SummarizePowerLog(log));
    return kExitOk;
  }
  EnergyParams params;
  if (!flags.preset.empty()) params = EnergyPreset(flags.preset);
  if (flags.idle_draw) params.idle_draw = *flags.idle_draw;
  if (flags.active_draw) params.active_draw = *flags.active_draw;
  if (flags.inference_time) params.inference_time = *flags.inference_time;
  params.cycle_time = flags.cycle_time;
  params.Validate();
  const Schedule schedule =
      BuildSchedule(ParsePattern(flags.pattern), flags.length);
  std::printf("pattern %s\nprocessed %d/%d\nestimated_draw_w %.4f\n",
              schedule.pattern().ToString().c_str(), ProcessedCount(schedule),
              schedule.sequence_length(), EstimateDraw(params, schedule));
  return kExitOk;
}

int RunReport(const std::string& in_path, const std::string& out_dir) {
  std::ifstream in(in_path);
  if (!in) throw DatasetError("cannot open " + in_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(in_path + ": " + e.what());
  }
  SweepReport report = ReportFromJson(j);
  ComputeYields(report.rows);
  std::cout << FormatReportTable(report);
  if (!out_dir.empty()) {
    WriteSweepReport(report, out_dir);
    std::cerr << "reports written to " << out_dir << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame-dropping evaluation for 3D multi-object tracking"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "run a single (variant, pattern) cell");
  AddCommonFlags(run, run_flags, /*single_cell=*/true);

  CommonFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run variants x patterns");
  AddCommonFlags(sweep, sweep_flags, /*single_cell=*/false);

  EvalFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "score stored tracker outputs");
  eval->add_option("--labels", eval_flags.labels_dir,
                   "KITTI label directory or builtin:reference")
      ->required();
  eval->add_option("--outputs", eval_flags.outputs_dir,
                   "directory of <sequence>.txt outputs")
      ->required();
  eval->add_option("--similarity", eval_flags.similarity, "3d-iou or bev-iou");
  eval->add_option("--threshold", eval_flags.threshold, "CLEAR match threshold");
  eval->add_option("--classes", eval_flags.classes, "evaluated classes");

  EnergyFlags energy_flags;
  auto* energy = app.add_subcommand(
      "energy", "summarize a power log or estimate draw for a pattern");
  auto* log_opt = energy->add_option("--log", energy_flags.log_path,
                                     "power log CSV (timestamp_s,watts)");
  energy->add_option("--preset", energy_flags.preset, "detector preset")
      ->excludes(log_opt);
  energy->add_option("--idle", energy_flags.idle_draw, "idle draw [W]");
  energy->add_option("--active", energy_flags.active_draw, "active draw [W]");
  energy->add_option("--inference", energy_flags.inference_time,
                     "inference time [s]");
  energy->add_option("--cycle", energy_flags.cycle_time, "cycle time [s]");
  energy->add_option("--pattern", energy_flags.pattern, "drop pattern n/m");
  energy->add_option("--length", energy_flags.length, "sequence length");

  std::string report_in;
  std::string report_out;
  auto* report = app.add_subcommand("report", "tables and plot CSV");
  report->add_option("--in", report_in, "sweep.json")->required();
  report->add_option("--out", report_out, "write CSV reports here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return RunCell(run_flags);
    if (*sweep) return RunSweepCommand(sweep_flags);
    if (*eval) return RunEval(eval_flags);
    if (*energy) return RunEnergy(energy_flags);
    if (*report) return RunReport(report_in, report_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return kExitDataset;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}
