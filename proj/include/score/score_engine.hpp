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
#include <span>
#include <vector>

#include "score/acquisition.hpp"
#include "score/gp.hpp"
#include "score/param_space.hpp"
#include "score/trace.hpp"

namespace score {

struct ProjectionEntry {
  double best_value = 0.0;
  std::uint64_t count = 0;

  friend bool operator==(const ProjectionEntry&, const ProjectionEntry&) = default;
};

/// Per-dimension min-projection of the evaluation history: for every grid
/// value, the lowest objective observed with that value and how many records
/// share it. An entry exists iff its count is nonzero.
class ProjectionTable {
 public:
  ProjectionTable() = default;
  explicit ProjectionTable(const SearchSpace& space);

  void add(const EvaluationRecord& record);

  std::size_t dims() const { return table_.size(); }
  std::size_t grid_size(std::size_t d) const { return table_[d].size(); }
  std::optional<ProjectionEntry> find(std::size_t d, std::size_t index) const;
  /// Grid indices of dimension d that have at least one record.
  std::vector<std::uint32_t> observed(std::size_t d) const;

  friend bool operator==(const ProjectionTable&, const ProjectionTable&) = default;

 private:
  std::vector<std::vector<ProjectionEntry>> table_;
};

/// Applies `records` to `table` (min update, count increment).
void update_projections(ProjectionTable& table, std::span<const EvaluationRecord> records);

struct ScoreOptions {
  std::size_t batch_size = 1;
  ZetaSchedule zeta{0.1, 1.0};
  /// 1D kernel lengthscale in grid steps of the dimension's mesh coordinate.
  double lengthscale_steps = 0.35;
  double signal_variance = 1.0;  // standardized target units
  double noise_variance = 5e-3;  // standardized target units
  double jitter = 1e-12;
  /// Softmax temperature as a fraction of each dimension's score range.
  double temperature = 0.12;
  double temperature_floor = 1e-9;
  /// Evaluate batches concurrently (objective must be pure).
  bool parallel_objective = false;

  void validate() const;
};

/// The SCORE optimizer state. Owns the history and its projections.
class ScoreState {
 public:
  ScoreState(std::shared_ptr<const SearchSpace> space, ScoreOptions options,
             std::uint64_t seed);

  const SearchSpace& space() const { return *space_; }
  const History& history() const { return history_; }
  const ProjectionTable& projections() const { return projections_; }
  const ScoreOptions& options() const { return options_; }
  const EvaluatedSet& evaluated() const { return evaluated_; }
  const RunCounters& counters() const { return counters_; }
  std::size_t iteration() const { return iteration_; }
  double current_zeta() const { return options_.zeta.at(iteration_); }
  Rng& rng() { return rng_; }

  /// Evaluates `n_init` distinct random grid tuples. Returns the trace row
  /// describing the initial design.
  TraceRow initialize(const Objective& objective, std::size_t n_init);

  /// Evaluates an explicit batch and folds it into history and projections.
  std::vector<std::size_t> evaluate(std::span<const IndexTuple> batch,
                                    const Objective& objective);

  /// Records a value computed outside `evaluate` (ask/tell use). Non-finite
  /// values are counted as dropped; the tuple is marked evaluated either way.
  void observe(const IndexTuple& tuple, double value,
               std::chrono::nanoseconds wall_time = {});

  RunCounters& mutable_counters() { return counters_; }
  void advance_iteration() { ++iteration_; }

 private:
  std::shared_ptr<const SearchSpace> space_;
  ScoreOptions options_;
  Rng rng_;
  History history_;
  ProjectionTable projections_;
  EvaluatedSet evaluated_;
  RunCounters counters_;
  std::size_t iteration_ = 0;
};

struct DimensionScores {
  std::vector<double> scores;
  bool fitted = false;  // false: surrogate failed or no data, scores uniform
  std::chrono::nanoseconds fit_time{0};
};

/// Fits a 1D GP to the observed projections of dimension `d` and returns the
/// expected improvement of every grid value (standardized units).
DimensionScores score_dimension(const ScoreState& state, std::size_t d);

/// Greedy per-dimension argmax first, then softmax-sampled tuples, all
/// distinct and unevaluated. `max_batch` caps the configured batch size.
/// Empty result means the search space is exhausted.
std::vector<IndexTuple> select_batch(ScoreState& state,
                                     std::span<const std::vector<double>> per_dim_scores,
                                     std::optional<std::size_t> max_batch = std::nullopt);

/// One SCORE iteration: D surrogate fits, one batch selection, batch
/// evaluation. Returns nullopt when the space is exhausted.
std::optional<TraceRow> score_step(ScoreState& state, const Objective& objective,
                                   std::optional<std::size_t> max_batch = std::nullopt);

}  // namespace score
