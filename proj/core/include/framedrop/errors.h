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

#ifndef FRAMEDROP_ERRORS_H_
#define FRAMEDROP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace framedrop {

// Invalid arguments or configuration (bad pattern, bad profile, bad JSON).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unreadable input data. `line` is 1-based, 0 if not applicable.
class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A computation whose result is mathematically undefined for its inputs,
// e.g. MOTA without ground truth or a yield with no HOTA difference.
class ComputationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace framedrop

#endif  // FRAMEDROP_ERRORS_H_
