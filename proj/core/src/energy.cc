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

#include "framedrop/energy.h"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>

#include "framedrop/errors.h"

namespace framedrop {
namespace {

struct Preset {
  std::string_view name;
  EnergyParams params;
};

// Common 140 W idle floor. PV-RCNN and Point-RCNN infer longer than one
// cycle and stretch it.
constexpr std::array<Preset, 4> kPresets = {{
    {"pointpillars", {140.0, 286.0, 0.05, 0.1}},
    {"second", {140.0, 356.7, 0.06, 0.1}},
    {"pv-rcnn", {140.0, 314.0, 0.12, 0.1}},
    {"point-rcnn", {140.0, 304.0, 0.11, 0.1}},
}};

struct EnergyTotals {
  double joules = 0.0;
  double seconds = 0.0;
};

void Accumulate(const EnergyParams& p, const Schedule& schedule,
                EnergyTotals& totals) {
  const int processed = ProcessedCount(schedule);
  const int dropped = schedule.sequence_length() - processed;
  const double idle_tail = std::max(0.0, p.cycle_time - p.inference_time);
  totals.joules += processed * (p.active_draw * p.inference_time +
                                p.idle_draw * idle_tail) +
                   dropped * p.idle_draw * p.cycle_time;
  totals.seconds += processed * std::max(p.cycle_time, p.inference_time) +
                    dropped * p.cycle_time;
}

double ParseDouble(const std::string& field, int line) {
  if (field.empty()) throw DatasetError("empty field", line);
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (errno != 0 || end != field.c_str() + field.size() ||
      !std::isfinite(value)) {
    throw DatasetError("invalid number '" + field + "'", line);
  }
  return value;
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void EnergyParams::Validate() const {
  if (!(idle_draw >= 0.0) || !(active_draw >= idle_draw)) {
    throw ConfigError("energy params need active_draw >= idle_draw >= 0");
  }
  if (!(inference_time > 0.0) || !(cycle_time > 0.0)) {
    throw ConfigError("inference_time and cycle_time must be positive");
  }
}

EnergyParams EnergyPreset(std::string_view name) {
  for (const Preset& preset : kPresets) {
    if (preset.name == name) return preset.params;
  }
  throw ConfigError("unknown energy preset '" + std::string(name) + "'");
}

std::vector<std::string> EnergyPresetNames() {
  std::vector<std::string> names;
  for (const Preset& preset : kPresets) names.emplace_back(preset.name);
  return names;
}

double EstimateDraw(const EnergyParams& params, const Schedule& schedule) {
  return EstimateDraw(params, std::span<const Schedule>(&schedule, 1));
}

double EstimateDraw(const EnergyParams& params,
                    std::span<const Schedule> schedules) {
  params.Validate();
  EnergyTotals totals;
  for (const Schedule& schedule : schedules) {
    Accumulate(params, schedule, totals);
  }
  if (totals.seconds <= 0.0) return params.idle_draw;
  return totals.joules / totals.seconds;
}

PowerLog PowerLog::FromUniform(std::vector<double> watts, double sample_rate) {
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
  PowerLog log;
  log.sample_rate = sample_rate;
  log.samples.reserve(watts.size());
  for (size_t i = 0; i < watts.size(); ++i) {
    log.samples.push_back({static_cast<double>(i) / sample_rate, watts[i]});
  }
  return log;
}

PowerLog ReadPowerLogCsv(std::istream& in) {
  PowerLog log;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      const std::string first = Trim(trimmed.substr(0, trimmed.find(',')));
      char* end = nullptr;
      std::strtod(first.c_str(), &end);
      if (!first.empty() && end == first.c_str() + first.size()) {
        throw DatasetError("missing 'timestamp_s,watts' header", line_number);
      }
      continue;
    }
    const auto comma = trimmed.find(',');
    if (comma == std::string::npos ||
        trimmed.find(',', comma + 1) != std::string::npos) {
      throw DatasetError("expected 'timestamp_s,watts'", line_number);
    }
    const double t = ParseDouble(Trim(trimmed.substr(0, comma)), line_number);
    const double w = ParseDouble(Trim(trimmed.substr(comma + 1)), line_number);
    if (w < 0.0) throw DatasetError("negative power reading", line_number);
    if (!log.samples.empty() && t < log.samples.back().timestamp_s) {
      throw DatasetError("timestamps must be non-decreasing", line_number);
    }
    log.samples.push_back({t, w});
  }
  if (log.samples.empty()) throw DatasetError("power log has no samples");
  const double span =
      log.samples.back().timestamp_s - log.samples.front().timestamp_s;
  if (log.samples.size() > 1 && span > 0.0) {
    log.sample_rate = static_cast<double>(log.samples.size() - 1) / span;
  }
  return log;
}

double SummarizePowerLog(const PowerLog& log) {
  if (log.samples.empty()) throw DatasetError("power log has no samples");
  // Guards window edges against timestamps printed a hair below an integer.
  constexpr double kEdgeTolerance = 1e-9;
  const double t0 = log.samples.front().timestamp_s;
  std::map<long long, std::pair<double, int>> windows;
  for (const PowerSample& s : log.samples) {
    const auto w = static_cast<long long>(
        std::floor(s.timestamp_s - t0 + kEdgeTolerance));
    auto& [sum, count] = windows[w];
    sum += s.watts;
    ++count;
  }
  std::vector<double> means;
  means.reserve(windows.size());
  for (const auto& [w, acc] : windows) means.push_back(acc.first / acc.second);
  std::sort(means.begin(), means.end());
  const size_t mid = means.size() / 2;
  if (means.size() % 2 == 1) return means[mid];
  return 0.5 * (means[mid - 1] + means[mid]);
}

YieldRecord YieldMetric(const DrawScore& baseline, const DrawScore& variant) {
  if (baseline.hota == variant.hota) {
    throw ComputationError("yield undefined: HOTA unchanged from baseline");
  }
  YieldRecord record;
  record.baseline_draw = baseline.draw;
  record.variant_draw = variant.draw;
  record.baseline_hota = baseline.hota;
  record.variant_hota = variant.hota;
  record.yield_value =
      (baseline.draw - variant.draw) / (baseline.hota - variant.hota);
  return record;
}

}  // namespace framedrop
