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

#include "framedrop/scenario.h"

#include <algorithm>
#include <cmath>

#include "framedrop/errors.h"

namespace framedrop {

SequenceData ScriptedSequence(const std::string& sequence_id, int frame_count,
                              double cycle_time,
                              const std::vector<ScriptedCar>& cars) {
  if (frame_count < 1) throw ConfigError("frame_count must be positive");
  SequenceData data;
  data.sequence_id = sequence_id;
  data.frame_count = frame_count;
  for (const ScriptedCar& car : cars) {
    const bool moving = car.vx != 0.0 || car.vy != 0.0;
    const double yaw =
        NormalizeYaw(moving ? std::atan2(car.vy, car.vx) : car.parked_yaw);
    const int last = std::min(car.last_frame, frame_count - 1);
    for (int f = std::max(0, car.first_frame); f <= last; ++f) {
      const double t = (f - car.first_frame) * cycle_time;
      LabeledObject label;
      label.frame_index = f;
      label.track_id = car.track_id;
      label.class_label = ObjectClass::kCar;
      label.box = MakeBox(car.x0 + car.vx * t, car.y0 + car.vy * t,
                          0.5 * car.height, car.length, car.width, car.height,
                          yaw);
      data.labels.push_back(label);
    }
  }
  std::sort(data.labels.begin(), data.labels.end(),
            [](const LabeledObject& a, const LabeledObject& b) {
              return std::pair(a.frame_index, a.track_id) <
                     std::pair(b.frame_index, b.track_id);
            });
  return data;
}

SequenceData ReferenceScenario() {
  // Lanes at y = +3.5 and y = -3.5 run forward, y = 0 runs back toward the
  // ego vehicle. Car 4 crosses the y = 0 lane at x = 40 half a second
  // before car 5 reaches that point.
  const std::vector<ScriptedCar> cars = {
      {0, 0, 199, 5.0, 3.5, 6.0, 0.0},
      {1, 0, 199, 30.0, -3.5, 4.0, 0.0},
      {2, 0, 199, 15.0, 8.0, 0.0, 0.0, 4.5, 1.9, 1.6, 0.0},
      {3, 0, 199, 80.0, 0.0, -3.0, 0.0},
      {4, 0, 199, 40.0, -30.0, 0.0, 5.0, 4.0, 1.7, 1.5},
      {5, 0, 199, 72.5, 0.0, -5.0, 0.0, 4.4, 1.8, 1.5},
      {6, 120, 199, -10.0, -3.5, 9.0, 0.0, 4.6, 1.9, 1.6},
      {7, 0, 80, 50.0, 0.0, -4.0, 0.0},
  };
  return ScriptedSequence("reference", 200, 0.1, cars);
}

}  // namespace framedrop
