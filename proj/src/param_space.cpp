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

#include "score/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "score/error.hpp"

namespace score {

ParameterGrid::ParameterGrid(std::string name, std::vector<double> values,
                             GridScale scale)
    : name_(std::move(name)), values_(std::move(values)), scale_(scale) {
  if (values_.size() < 2) {
    throw ConfigError("grid '" + name_ + "' needs at least 2 values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ConfigError("grid '" + name_ + "' has a non-finite value");
    }
    if (scale_ == GridScale::kLog && values_[i] <= 0.0) {
      throw ConfigError("log grid '" + name_ + "' requires positive values");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw ConfigError("grid '" + name_ + "' values must be strictly increasing");
    }
  }
}

std::size_t ParameterGrid::nearest_index(double x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0;
  if (it == values_.end()) return values_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - values_.begin());
  const auto lo = hi - 1;
  return (x - values_[lo] <= values_[hi] - x) ? lo : hi;
}

double ParameterGrid::coordinate(std::size_t i) const {
  return scale_ == GridScale::kLog ? std::log10(values_[i]) : values_[i];
}

double ParameterGrid::mean_step() const {
  return (coordinate(values_.size() - 1) - coordinate(0)) /
         static_cast<double>(values_.size() - 1);
}

ParameterGrid make_grid(double lo, double hi, std::size_t count, GridScale scale,
                        std::string name) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("grid '" + name + "': need finite lo < hi");
  }
  if (count < 2) {
    throw ConfigError("grid '" + name + "': count must be >= 2");
  }
  if (scale == GridScale::kLog && lo <= 0.0) {
    throw ConfigError("grid '" + name + "': log scale requires lo > 0");
  }
  std::vector<double> values(count);
  const double n = static_cast<double>(count - 1);
  if (scale == GridScale::kLinear) {
    const double step = (hi - lo) / n;
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = lo + step * static_cast<double>(i);
    }
  } else {
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / n);
    }
  }
  values.front() = lo;
  values.back() = hi;
  return ParameterGrid(std::move(name), std::move(values), scale);
}

std::size_t IndexTupleHash::operator()(const IndexTuple& t) const noexcept {
  // FNV-1a over the index words.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : t) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

SearchSpace::SearchSpace(std::vector<ParameterGrid> grids) : grids_(std::move(grids)) {
  if (grids_.empty()) throw ConfigError("search space needs at least one dimension");
}

double SearchSpace::combination_count() const {
  double n = 1.0;
  for (const auto& g : grids_) n *= static_cast<double>(g.size());
  return n;
}

std::optional<std::uint64_t> SearchSpace::exact_combination_count() const {
  std::uint64_t n = 1;
  for (const auto& g : grids_) {
    const std::uint64_t s = g.size();
    if (n > std::numeric_limits<std::uint64_t>::max() / s) return std::nullopt;
    n *= s;
  }
  return n;
}

bool SearchSpace::contains(std::span<const std::uint32_t> indices) const {
  if (indices.size() != grids_.size()) return false;
  for (std::size_t d = 0; d < indices.size(); ++d) {
    if (indices[d] >= grids_[d].size()) return false;
  }
  return true;
}

std::vector<double> SearchSpace::point(std::span<const std::uint32_t> indices) const {
  std::vector<double> p(indices.size());
  for (std::size_t d = 0; d < indices.size(); ++d) p[d] = grids_[d][indices[d]];
  return p;
}

IndexTuple SearchSpace::nearest_indices(std::span<const double> point) const {
  IndexTuple t(point.size());
  for (std::size_t d = 0; d < point.size(); ++d) {
    t[d] = static_cast<std::uint32_t>(grids_[d].nearest_index(point[d]));
  }
  return t;
}

std::string format_indices(std::span<const std::uint32_t> indices) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) os << ',';
    os << indices[i];
  }
  os << ')';
  return os.str();
}

const EvaluationRecord& History::record(const IndexTuple& indices, double value,
                                        std::chrono::nanoseconds wall_time) {
  if (!space_->contains(indices)) {
    throw ConfigError("indices " + format_indices(indices) + " outside the search space");
  }
  if (!std::isfinite(value)) {
    throw NonFiniteValue("non-finite objective value at " + format_indices(indices),
                         indices);
  }
  EvaluationRecord r;
  r.indices = indices;
  r.point = space_->point(indices);
  r.value = value;
  r.eval_id = records_.size();
  r.wall_time = wall_time;
  records_.push_back(std::move(r));
  if (records_.size() == 1 || value < records_[best_].value) {
    best_ = records_.size() - 1;
  }
  return records_.back();
}

}  // namespace score
