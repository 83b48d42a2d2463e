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

#ifndef FRAMEDROP_SCENARIO_H_
#define FRAMEDROP_SCENARIO_H_

#include <string>
#include <vector>

#include "framedrop/kitti_io.h"

namespace framedrop {

// One constant-velocity car: present on frames [first_frame, last_frame],
// centered at (x0, y0) on first_frame.
struct ScriptedCar {
  int track_id = 0;
  int first_frame = 0;
  int last_frame = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double vx = 0.0;  // m/s
  double vy = 0.0;  // m/s
  double length = 4.2;
  double width = 1.8;
  double height = 1.5;
  // Used when the car is stationary; moving cars face their velocity.
  double parked_yaw = 0.0;
};

SequenceData ScriptedSequence(const std::string& sequence_id, int frame_count,
                              double cycle_time,
                              const std::vector<ScriptedCar>& cars);

// Bundled 200-frame, 10 Hz street scene: cars in both directions at
// 0-9 m/s, entries and exits, and one pair whose paths cross.
SequenceData ReferenceScenario();

inline constexpr char kReferenceDatasetName[] = "builtin:reference";

}  // namespace framedrop

#endif  // FRAMEDROP_SCENARIO_H_
