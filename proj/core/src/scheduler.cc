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

#include "framedrop/scheduler.h"

#include <algorithm>
#include <charconv>
#include <string>

#include "framedrop/errors.h"

namespace framedrop {
namespace {

int ParseInt(std::string_view text, std::string_view whole) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid frame-drop pattern '" + std::string(whole) +
                      "'");
  }
  return value;
}

}  // namespace

DropPattern::DropPattern(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1 || n > m) {
    throw ConfigError("invalid frame-drop pattern " + std::to_string(n) + "/" +
                      std::to_string(m) + ": need 1 <= n <= m");
  }
}

std::string DropPattern::ToString() const {
  return std::to_string(n_) + "/" + std::to_string(m_);
}

DropPattern PatternForTarget(int target_percent) {
  for (const NamedTarget& t : kNamedTargets) {
    if (t.target_percent == target_percent) return DropPattern(t.n, t.m);
  }
  throw ConfigError("unknown processing target " +
                    std::to_string(target_percent) +
                    " (expected 100, 90, 75, 50, 25 or 10)");
}

DropPattern ParsePattern(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return DropPattern(ParseInt(text.substr(0, slash), text),
                       ParseInt(text.substr(slash + 1), text));
  }
  std::string_view number = text;
  if (!number.empty() && number.back() == '%') number.remove_suffix(1);
  return PatternForTarget(ParseInt(number, text));
}

Schedule BuildSchedule(const DropPattern& pattern, int sequence_length) {
  if (sequence_length < 1) {
    throw ConfigError("sequence length must be positive");
  }
  std::vector<char> flags(static_cast<size_t>(sequence_length));
  for (int i = 0; i < sequence_length; ++i) {
    flags[i] = (i % pattern.m()) < pattern.n() ? 1 : 0;
  }
  return Schedule(pattern, std::move(flags));
}

int ProcessedCount(const Schedule& schedule) {
  return static_cast<int>(
      std::count(schedule.flags().begin(), schedule.flags().end(), 1));
}

double EffectiveTarget(const Schedule& schedule) {
  return 100.0 * ProcessedCount(schedule) / schedule.sequence_length();
}

Schedule TriggerNext(const Schedule& schedule, int current_frame) {
  if (current_frame < 0 || current_frame + 1 >= schedule.sequence_length()) {
    throw ConfigError("trigger at frame " + std::to_string(current_frame) +
                      " has no next frame in a sequence of length " +
                      std::to_string(schedule.sequence_length()));
  }
  std::vector<char> flags = schedule.flags();
  flags[current_frame + 1] = 1;
  return Schedule(schedule.pattern(), std::move(flags));
}

}  // namespace framedrop
