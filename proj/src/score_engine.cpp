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

#include "score/score_engine.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "score/error.hpp"

namespace score {

ProjectionTable::ProjectionTable(const SearchSpace& space) {
  table_.resize(space.dims());
  for (std::size_t d = 0; d < space.dims(); ++d) table_[d].resize(space.grid(d).size());
}

void ProjectionTable::add(const EvaluationRecord& record) {
  for (std::size_t d = 0; d < table_.size(); ++d) {
    auto& e = table_[d][record.indices[d]];
    e.best_value = e.count == 0 ? record.value : std::min(e.best_value, record.value);
    ++e.count;
  }
}

std::optional<ProjectionEntry> ProjectionTable::find(std::size_t d, std::size_t index) const {
  const auto& e = table_.at(d).at(index);
  if (e.count == 0) return std::nullopt;
  return e;
}

std::vector<std::uint32_t> ProjectionTable::observed(std::size_t d) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < table_[d].size(); ++i) {
    if (table_[d][i].count > 0) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

void update_projections(ProjectionTable& table, std::span<const EvaluationRecord> records) {
  for (const auto& r : records) table.add(r);
}

void ScoreOptions::validate() const {
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  zeta.validate();
  if (!(lengthscale_steps > 0.0) || !(signal_variance > 0.0) || !(noise_variance >= 0.0) ||
      !(jitter >= 1e-12) || !(temperature > 0.0) || !(temperature_floor > 0.0)) {
    throw ConfigError("invalid SCORE surrogate or temperature settings");
  }
}

ScoreState::ScoreState(std::shared_ptr<const SearchSpace> space, ScoreOptions options,
                       std::uint64_t seed)
    : space_(std::move(space)),
      options_(options),
      rng_(seed),
      history_(space_),
      projections_(*space_) {
  options_.validate();
}

std::vector<std::size_t> ScoreState::evaluate(std::span<const IndexTuple> batch,
                                              const Objective& objective) {
  auto appended = evaluate_batch(batch, objective, options_.parallel_objective, history_,
                                 evaluated_, counters_);
  for (auto i : appended) projections_.add(history_[i]);
  return appended;
}

void ScoreState::observe(const IndexTuple& tuple, double value,
                         std::chrono::nanoseconds wall_time) {
  if (!space_->contains(tuple)) {
    throw ConfigError("indices " + format_indices(tuple) + " outside the search space");
  }
  evaluated_.insert(tuple);
  ++counters_.evaluations;
  try {
    projections_.add(history_.record(tuple, value, wall_time));
  } catch (const NonFiniteValue& e) {
    ++counters_.dropped;
    std::clog << "warning: " << e.what() << "; dropped\n";
  }
}

TraceRow ScoreState::initialize(const Objective& objective, std::size_t n_init) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto design = random_design(*space_, n_init, rng_, evaluated_);
  evaluate(design, objective);
  TraceRow row;
  row.iteration = 0;
  row.evals = counters_.evaluations;
  row.best_value = history_.empty() ? std::nan("") : history_.best_value();
  row.iter_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  row.train_size = history_.size();
  if (!history_.empty()) row.suggested = history_.best().indices;
  return row;
}

DimensionScores score_dimension(const ScoreState& state, std::size_t d) {
  const ParameterGrid& grid = state.space().grid(d);
  DimensionScores out;
  out.scores.assign(grid.size(), 1.0);
  const auto observed = state.projections().observed(d);
  if (observed.empty() || state.history().empty()) return out;

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(observed.size());
  ys.reserve(observed.size());
  for (auto i : observed) {
    xs.push_back(grid.coordinate(i));
    ys.push_back(state.projections().find(d, i)->best_value);
  }
  gp::KernelConfig kernel;
  kernel.lengthscale = state.options().lengthscale_steps * grid.mean_step();
  kernel.signal_variance = state.options().signal_variance;
  kernel.noise_variance = state.options().noise_variance;
  kernel.jitter = state.options().jitter;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const gp::GpModel model(gp::column(xs), ys, kernel);
    out.fit_time = std::chrono::steady_clock::now() - t0;
    std::vector<double> coords(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) coords[i] = grid.coordinate(i);
    auto posterior = model.predict(gp::column(coords));
    // Score on the model's standardized scale.
    for (auto& p : posterior) {
      p.mean = model.standardize(p.mean);
      p.std /= model.target_std();
    }
    const AcquisitionParams params{model.standardize(state.history().best_value()),
                                   state.current_zeta()};
    out.scores = score_grid(posterior, params);
    out.fitted = true;
  } catch (const SurrogateError& e) {
    out.fit_time = std::chrono::steady_clock::now() - t0;
    std::clog << "warning: dimension " << d << ": " << e.what() << "; uniform scores\n";
  }
  return out;
}

namespace {

struct SoftmaxSampler {
  std::vector<double> cumulative;

  explicit SoftmaxSampler(std::span<const double> scores, double fraction, double floor) {
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    const double tau = std::max(fraction * (*hi - *lo), floor);
    cumulative.resize(scores.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      acc += std::exp((scores[i] - *hi) / tau);
      cumulative[i] = acc;
    }
  }

  std::uint32_t sample(Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, cumulative.back());
    const double r = u(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative.begin());
  }
};

}  // namespace

std::vector<IndexTuple> select_batch(ScoreState& state,
                                     std::span<const std::vector<double>> per_dim_scores,
                                     std::optional<std::size_t> max_batch) {
  const SearchSpace& space = state.space();
  if (per_dim_scores.size() != space.dims()) {
    throw ConfigError("select_batch: need scores for every dimension");
  }
  std::size_t target = state.options().batch_size;
  if (max_batch) target = std::min(target, *max_batch);
  if (auto remaining = remaining_combinations(space, state.evaluated())) {
    target = static_cast<std::size_t>(std::min<std::uint64_t>(target, *remaining));
  }
  std::vector<IndexTuple> batch;
  if (target == 0) return batch;

  EvaluatedSet chosen;
  auto try_add = [&](IndexTuple t) {
    if (state.evaluated().contains(t) || chosen.contains(t)) return;
    chosen.insert(t);
    batch.push_back(std::move(t));
  };

  IndexTuple greedy(space.dims());
  for (std::size_t d = 0; d < space.dims(); ++d) {
    const auto& s = per_dim_scores[d];
    if (s.size() != space.grid(d).size()) {
      throw ConfigError("select_batch: score vector size does not match grid");
    }
    greedy[d] = static_cast<std::uint32_t>(std::max_element(s.begin(), s.end()) - s.begin());
  }
  try_add(std::move(greedy));

  if (batch.size() < target) {
    std::vector<SoftmaxSampler> samplers;
    samplers.reserve(space.dims());
    for (const auto& s : per_dim_scores) {
      samplers.emplace_back(s, state.options().temperature, state.options().temperature_floor);
    }
    Rng& rng = state.rng();
    const std::size_t max_attempts = 100 * target;
    IndexTuple t(space.dims());
    for (std::size_t attempt = 0; attempt < max_attempts && batch.size() < target; ++attempt) {
      for (std::size_t d = 0; d < space.dims(); ++d) t[d] = samplers[d].sample(rng);
      try_add(t);
    }
    while (batch.size() < target) {
      auto u = random_unevaluated(space, rng, state.evaluated(), &chosen);
      if (!u) break;
      try_add(std::move(*u));
    }
  }
  return batch;
}

std::optional<TraceRow> score_step(ScoreState& state, const Objective& objective,
                                   std::optional<std::size_t> max_batch) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const std::size_t dims = state.space().dims();
  std::vector<std::vector<double>> scores(dims);
  std::chrono::nanoseconds fit_time{0};
  auto& counters = state.mutable_counters();
  for (std::size_t d = 0; d < dims; ++d) {
    auto ds = score_dimension(state, d);
    if (!ds.fitted && !state.projections().observed(d).empty()) ++counters.surrogate_failures;
    if (!state.projections().observed(d).empty()) ++counters.gp_fits;
    fit_time += ds.fit_time;
    scores[d] = std::move(ds.scores);
  }
  counters.fit_time += fit_time;

  const auto batch = select_batch(state, scores, max_batch);
  if (batch.empty()) return std::nullopt;
  const auto appended = state.evaluate(batch, objective);
  state.advance_iteration();

  TraceRow row;
  row.iteration = state.iteration();
  row.evals = counters.evaluations;
  const auto& history = state.history();
  row.best_value = history.empty() ? std::nan("") : history.best_value();
  row.iter_time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  row.fit_time_ms = std::chrono::duration<double, std::milli>(fit_time).count();
  row.gp_fits = counters.gp_fits;
  row.train_size = history.size();
  // Best candidate of this batch; fall back to the greedy tuple if all failed.
  row.suggested = batch.front();
  double best_in_batch = 0.0;
  bool any = false;
  for (auto i : appended) {
    if (!any || history[i].value < best_in_batch) {
      best_in_batch = history[i].value;
      row.suggested = history[i].indices;
      any = true;
    }
  }
  return row;
}

}  // namespace score
