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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "score/acquisition.hpp"
#include "score/param_space.hpp"
#include "score/trace.hpp"

namespace score {

/// Classical BO on the joint space: one isotropic GP over all records with
/// inputs rescaled to [0, 1] per dimension, EI maximized over a random pool of
/// unevaluated tuples plus the incumbent's grid neighbours.
struct BoOptions {
  std::size_t candidate_pool_size = 1000;
  ZetaSchedule zeta;
  double lengthscale = 0.2;  // in rescaled [0, 1] units
  double signal_variance = 1.0;
  double noise_variance = 1e-2;  // standardized target units
  double jitter = 1e-12;

  void validate() const;
};

class BoState {
 public:
  BoState(std::shared_ptr<const SearchSpace> space, BoOptions options, std::uint64_t seed);

  const SearchSpace& space() const { return *space_; }
  const History& history() const { return history_; }
  const BoOptions& options() const { return options_; }
  const EvaluatedSet& evaluated() const { return evaluated_; }
  const RunCounters& counters() const { return counters_; }
  std::size_t iteration() const { return iteration_; }

  TraceRow initialize(const Objective& objective, std::size_t n_init);

  /// Next tuple to evaluate, or nullopt when the space is exhausted.
  /// Updates fit counters; `fit_time` receives the GP-fit duration.
  std::optional<IndexTuple> suggest(std::chrono::nanoseconds* fit_time = nullptr);

  void evaluate(const IndexTuple& tuple, const Objective& objective);
  void advance_iteration() { ++iteration_; }

  /// Inputs rescaled to [0, 1] per dimension.
  std::vector<double> unit_point(const IndexTuple& t) const;

 private:
  std::shared_ptr<const SearchSpace> space_;
  BoOptions options_;
  Rng rng_;
  History history_;
  EvaluatedSet evaluated_;
  RunCounters counters_;
  std::size_t iteration_ = 0;
};

/// One BO iteration: fit, propose, evaluate. Returns nullopt when exhausted.
std::optional<TraceRow> bo_step(BoState& state, const Objective& objective);

}  // namespace score
