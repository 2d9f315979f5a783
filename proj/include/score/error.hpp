// Copyright 2026 The SCORE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace score {

/// Invalid user-supplied configuration (bounds, counts, flags, files).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gaussian-process fit failed even after jitter escalation.
class SurrogateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical solver failure inside an objective (e.g. diode equation).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write an output artifact.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace score
