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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "score/param_space.hpp"

namespace score {

using Objective = std::function<double(std::span<const double>)>;
using EvaluatedSet = std::unordered_set<IndexTuple, IndexTupleHash>;
using Rng = std::mt19937_64;

/// One row of a convergence trace. Row 0 describes the initial design.
struct TraceRow {
  std::size_t iteration = 0;
  std::size_t evals = 0;  // objective calls so far, failed ones included
  double best_value = 0.0;
  double iter_time_ms = 0.0;
  double cum_time_ms = 0.0;
  double fit_time_ms = 0.0;  // GP-fit sections within this iteration
  std::size_t gp_fits = 0;   // cumulative
  std::size_t train_size = 0;
  IndexTuple suggested;  // best candidate of the iteration
};

struct ConvergenceTrace {
  std::string method;
  std::string problem;
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;
};

/// Counters shared by both optimizers.
struct RunCounters {
  std::size_t evaluations = 0;
  std::size_t dropped = 0;  // non-finite objective values
  std::size_t gp_fits = 0;
  std::size_t surrogate_failures = 0;
  std::chrono::nanoseconds fit_time{0};
};

/// Uniformly random tuple not in `evaluated` (nor in `exclude`), or nullopt
/// when the space is exhausted. Falls back to enumeration for small spaces.
std::optional<IndexTuple> random_unevaluated(const SearchSpace& space, Rng& rng,
                                             const EvaluatedSet& evaluated,
                                             const EvaluatedSet* exclude = nullptr);

/// Number of combinations not yet evaluated, or nullopt when the space is too
/// large to count exactly.
std::optional<std::uint64_t> remaining_combinations(const SearchSpace& space,
                                                    const EvaluatedSet& evaluated);

/// `count` distinct random tuples that are not yet evaluated (fewer if the
/// space runs out).
std::vector<IndexTuple> random_design(const SearchSpace& space, std::size_t count, Rng& rng,
                                      const EvaluatedSet& evaluated);

/// Evaluates `objective` at each tuple (concurrently when `parallel`), marks
/// every tuple evaluated and appends finite results to `history`. Returns the
/// history positions of the appended records.
std::vector<std::size_t> evaluate_batch(std::span<const IndexTuple> batch,
                                        const Objective& objective, bool parallel,
                                        History& history, EvaluatedSet& evaluated,
                                        RunCounters& counters);

}  // namespace score
