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
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace score {

enum class GridScale { kLinear, kLog };

/// Ordered discrete mesh for one parameter.
///
/// Values are strictly increasing and finite; log grids hold positive values
/// only. The scale is metadata describing how the mesh was generated and
/// selects the coordinate the 1D surrogates work in (value or log10(value)).
class ParameterGrid {
 public:
  ParameterGrid(std::string name, std::vector<double> values,
                GridScale scale = GridScale::kLinear);

  const std::string& name() const { return name_; }
  const std::vector<double>& values() const { return values_; }
  GridScale scale() const { return scale_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Index of the grid value closest to `x` (ties resolve to the lower index).
  std::size_t nearest_index(double x) const;

  /// Surrogate-space coordinate of grid value `i`.
  double coordinate(std::size_t i) const;

  /// Mean coordinate spacing, the unit for "grid steps".
  double mean_step() const;

 private:
  std::string name_;
  std::vector<double> values_;
  GridScale scale_;
};

/// Uniform mesh over [lo, hi] inclusive of both endpoints. Log meshes are
/// uniform in log10. Throws ConfigError naming `name` on bad input.
ParameterGrid make_grid(double lo, double hi, std::size_t count, GridScale scale,
                        std::string name = "x");

using IndexTuple = std::vector<std::uint32_t>;

struct IndexTupleHash {
  std::size_t operator()(const IndexTuple& t) const noexcept;
};

class SearchSpace {
 public:
  explicit SearchSpace(std::vector<ParameterGrid> grids);

  std::size_t dims() const { return grids_.size(); }
  const ParameterGrid& grid(std::size_t d) const { return grids_[d]; }
  const std::vector<ParameterGrid>& grids() const { return grids_; }

  /// Number of combinations as a double; display-only, may be inexact.
  double combination_count() const;
  /// Exact combination count, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> exact_combination_count() const;

  bool contains(std::span<const std::uint32_t> indices) const;
  std::vector<double> point(std::span<const std::uint32_t> indices) const;
  IndexTuple nearest_indices(std::span<const double> point) const;

 private:
  std::vector<ParameterGrid> grids_;
};

struct EvaluationRecord {
  IndexTuple indices;
  std::vector<double> point;
  double value = 0.0;
  std::uint64_t eval_id = 0;
  std::chrono::nanoseconds wall_time{0};
};

/// Append-only evaluation log with a running incumbent.
///
/// Only finite values are stored; `record` throws NonFiniteValue for NaN or
/// infinity so callers can count the failure and move on.
class History {
 public:
  explicit History(std::shared_ptr<const SearchSpace> space)
      : space_(std::move(space)) {}

  const EvaluationRecord& record(const IndexTuple& indices, double value,
                                 std::chrono::nanoseconds wall_time = {});

  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const std::vector<EvaluationRecord>& records() const { return records_; }
  const EvaluationRecord& operator[](std::size_t i) const { return records_[i]; }

  /// Incumbent record; requires a non-empty history.
  const EvaluationRecord& best() const { return records_.at(best_); }
  std::size_t best_index() const { return best_; }
  double best_value() const { return best().value; }

  const SearchSpace& space() const { return *space_; }
  const std::shared_ptr<const SearchSpace>& space_ptr() const { return space_; }

 private:
  std::shared_ptr<const SearchSpace> space_;
  std::vector<EvaluationRecord> records_;
  std::size_t best_ = 0;
};

class NonFiniteValue : public std::runtime_error {
 public:
  NonFiniteValue(const std::string& what, IndexTuple indices)
      : std::runtime_error(what), indices_(std::move(indices)) {}
  const IndexTuple& indices() const { return indices_; }

 private:
  IndexTuple indices_;
};

std::string format_indices(std::span<const std::uint32_t> indices);

}  // namespace score
