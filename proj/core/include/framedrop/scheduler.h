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

#ifndef FRAMEDROP_SCHEDULER_H_
#define FRAMEDROP_SCHEDULER_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace framedrop {

// Process n out of every m consecutive frames.
class DropPattern {
 public:
  // Throws ConfigError unless 1 <= n <= m.
  DropPattern(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }

  // Nominal processing target in percent, 100 * n / m.
  double nominal_target() const { return 100.0 * n_ / m_; }

  // "n/m".
  std::string ToString() const;

  friend bool operator==(const DropPattern&, const DropPattern&) = default;

 private:
  int n_;
  int m_;
};

// Accepts "n/m" or one of the named targets "100", "90", "75", "50", "25",
// "10" (optionally suffixed with '%').
DropPattern ParsePattern(std::string_view text);

// Pattern for a named processing target. Throws ConfigError for targets
// outside {100, 90, 75, 50, 25, 10}.
DropPattern PatternForTarget(int target_percent);

struct NamedTarget {
  int target_percent;
  int n;
  int m;
};

// The six standard processing targets, highest first.
inline constexpr std::array<NamedTarget, 6> kNamedTargets = {{
    {100, 1, 1},
    {90, 9, 10},
    {75, 3, 4},
    {50, 1, 2},
    {25, 1, 4},
    {10, 1, 10},
}};

// Per-sequence frame mask. Frame i is processed iff (i mod m) < n, unless
// a trigger forced it on. Immutable; TriggerNext returns a new value.
class Schedule {
 public:
  const DropPattern& pattern() const { return pattern_; }
  int sequence_length() const { return static_cast<int>(flags_.size()); }
  bool processed(int frame) const { return flags_.at(frame) != 0; }
  const std::vector<char>& flags() const { return flags_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  friend Schedule BuildSchedule(const DropPattern&, int);
  friend Schedule TriggerNext(const Schedule&, int);

  Schedule(DropPattern pattern, std::vector<char> flags)
      : pattern_(pattern), flags_(std::move(flags)) {}

  DropPattern pattern_;
  std::vector<char> flags_;
};

// Throws ConfigError if sequence_length < 1.
Schedule BuildSchedule(const DropPattern& pattern, int sequence_length);

int ProcessedCount(const Schedule& schedule);

// 100 * processed / length.
double EffectiveTarget(const Schedule& schedule);

// Forces frame current_frame + 1 to be processed. Throws ConfigError if
// that frame is past the end of the sequence.
Schedule TriggerNext(const Schedule& schedule, int current_frame);

}  // namespace framedrop

#endif  // FRAMEDROP_SCHEDULER_H_
