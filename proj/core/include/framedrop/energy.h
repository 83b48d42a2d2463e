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

#ifndef FRAMEDROP_ENERGY_H_
#define FRAMEDROP_ENERGY_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framedrop/scheduler.h"

namespace framedrop {

// Two-level system draw model. A processed frame draws active_draw for
// inference_time, then idles out the rest of the cycle; an inference longer
// than the cycle stretches the slot and delays the next frame. Dropped
// frames idle for one cycle.
struct EnergyParams {
  double idle_draw = 0.0;       // W
  double active_draw = 0.0;     // W
  double inference_time = 0.0;  // s per processed frame
  double cycle_time = 0.1;      // s

  // Throws ConfigError unless active >= idle >= 0, inference_time > 0 and
  // cycle_time > 0.
  void Validate() const;
};

// Named presets, one per detector class ("pointpillars", "second",
// "pv-rcnn", "point-rcnn"). Throws ConfigError for unknown names.
EnergyParams EnergyPreset(std::string_view name);
std::vector<std::string> EnergyPresetNames();

// Average system draw in watts over the whole schedule.
double EstimateDraw(const EnergyParams& params, const Schedule& schedule);

// Pooled over several sequences run back to back: total energy over total
// duration.
double EstimateDraw(const EnergyParams& params,
                    std::span<const Schedule> schedules);

struct PowerSample {
  double timestamp_s = 0.0;
  double watts = 0.0;
};

struct PowerLog {
  std::vector<PowerSample> samples;  // time-ordered
  double sample_rate = 100.0;        // Hz

  // Uniformly sampled log starting at t = 0.
  static PowerLog FromUniform(std::vector<double> watts, double sample_rate);
};

// Reads "timestamp_s,watts" CSV with a header row. The sample rate is
// estimated from the timestamps. Throws DatasetError on malformed rows,
// negative watts, decreasing timestamps or an empty log.
PowerLog ReadPowerLogCsv(std::istream& in);

// Median over 1-second windows of the per-window mean draw. Throws
// DatasetError on an empty log.
double SummarizePowerLog(const PowerLog& log);

struct DrawScore {
  double draw = 0.0;  // W
  double hota = 0.0;  // HOTA points
};

// Watts saved per HOTA point lost relative to the 100% baseline.
struct YieldRecord {
  double baseline_draw = 0.0;
  double variant_draw = 0.0;
  double baseline_hota = 0.0;
  double variant_hota = 0.0;
  double yield_value = 0.0;  // W per HOTA point
};

// Throws ComputationError if both HOTA values are equal.
YieldRecord YieldMetric(const DrawScore& baseline, const DrawScore& variant);

}  // namespace framedrop

#endif  // FRAMEDROP_ENERGY_H_
