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

#include "score/baseline_bo.hpp"

#include <cmath>
#include <iostream>

#include "score/error.hpp"
#include "score/gp.hpp"

namespace score {

void BoOptions::validate() const {
  if (candidate_pool_size < 1) throw ConfigError("candidate pool size must be >= 1");
  zeta.validate();
  if (!(lengthscale > 0.0) || !(signal_variance > 0.0) || !(noise_variance >= 0.0) ||
      !(jitter >= 1e-12)) {
    throw ConfigError("invalid BO kernel settings");
  }
}

BoState::BoState(std::shared_ptr<const SearchSpace> space, BoOptions options,
                 std::uint64_t seed)
    : space_(std::move(space)), options_(options), rng_(seed), history_(space_) {
  options_.validate();
}

std::vector<double> BoState::unit_point(const IndexTuple& t) const {
  std::vector<double> u(t.size());
  for (std::size_t d = 0; d < t.size(); ++d) {
    const auto& g = space_->grid(d);
    const double lo = g.coordinate(0);
    const double hi = g.coordinate(g.size() - 1);
    u[d] = (g.coordinate(t[d]) - lo) / (hi - lo);
  }
  return u;
}

TraceRow BoState::initialize(const Objective& objective, std::size_t n_init) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto design = random_design(*space_, n_init, rng_, evaluated_);
  evaluate_batch(design, objective, false, history_, evaluated_, counters_);
  TraceRow row;
  row.evals = counters_.evaluations;
  row.best_value = history_.empty() ? std::nan("") : history_.best_value();
  row.iter_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  row.train_size = history_.size();
  if (!history_.empty()) row.suggested = history_.best().indices;
  return row;
}

void BoState::evaluate(const IndexTuple& tuple, const Objective& objective) {
  evaluate_batch(std::span(&tuple, 1), objective, false, history_, evaluated_, counters_);
}

std::optional<IndexTuple> BoState::suggest(std::chrono::nanoseconds* fit_time) {
  const std::size_t dims = space_->dims();
  if (history_.empty()) return random_unevaluated(*space_, rng_, evaluated_);

  // Candidate pool: random unevaluated tuples plus incumbent neighbours.
  EvaluatedSet pooled;
  std::vector<IndexTuple> pool;
  pool.reserve(options_.candidate_pool_size + 2 * dims);
  for (std::size_t i = 0; i < options_.candidate_pool_size; ++i) {
    auto t = random_unevaluated(*space_, rng_, evaluated_, &pooled);
    if (!t) break;
    pooled.insert(*t);
    pool.push_back(std::move(*t));
  }
  const IndexTuple& incumbent = history_.best().indices;
  for (std::size_t d = 0; d < dims; ++d) {
    for (int step : {-1, 1}) {
      const std::int64_t j = static_cast<std::int64_t>(incumbent[d]) + step;
      if (j < 0 || j >= static_cast<std::int64_t>(space_->grid(d).size())) continue;
      IndexTuple n = incumbent;
      n[d] = static_cast<std::uint32_t>(j);
      if (evaluated_.contains(n) || pooled.contains(n)) continue;
      pooled.insert(n);
      pool.push_back(std::move(n));
    }
  }
  if (pool.empty()) return std::nullopt;

  const auto n = static_cast<Eigen::Index>(history_.size());
  gp::Inputs x(n, static_cast<Eigen::Index>(dims));
  std::vector<double> y(history_.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = history_[static_cast<std::size_t>(i)];
    const auto u = unit_point(r.indices);
    for (std::size_t d = 0; d < dims; ++d) x(i, static_cast<Eigen::Index>(d)) = u[d];
    y[static_cast<std::size_t>(i)] = r.value;
  }
  gp::KernelConfig kernel;
  kernel.lengthscale = options_.lengthscale;
  kernel.signal_variance = options_.signal_variance;
  kernel.noise_variance = options_.noise_variance;
  kernel.jitter = options_.jitter;

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<gp::GpModel> model;
  try {
    model.emplace(std::move(x), y, kernel);
  } catch (const SurrogateError& e) {
    std::clog << "warning: joint GP: " << e.what() << "; random suggestion\n";
    ++counters_.surrogate_failures;
  }
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  ++counters_.gp_fits;
  counters_.fit_time += elapsed;
  if (fit_time) *fit_time = elapsed;
  if (!model) return pool.front();

  gp::Inputs q(static_cast<Eigen::Index>(pool.size()), static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto u = unit_point(pool[i]);
    for (std::size_t d = 0; d < dims; ++d) {
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = u[d];
    }
  }
  auto posterior = model->predict(q);
  for (auto& p : posterior) {
    p.mean = model->standardize(p.mean);
    p.std /= model->target_std();
  }
  const AcquisitionParams params{model->standardize(history_.best_value()),
                                 options_.zeta.at(iteration_)};
  const auto scores = score_grid(posterior, params);
  const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
  return pool[static_cast<std::size_t>(best)];
}

std::optional<TraceRow> bo_step(BoState& state, const Objective& objective) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  std::chrono::nanoseconds fit{0};
  auto next = state.suggest(&fit);
  if (!next) return std::nullopt;
  const std::size_t trained_on = state.history().size();
  state.evaluate(*next, objective);
  state.advance_iteration();

  TraceRow row;
  row.iteration = state.iteration();
  row.evals = state.counters().evaluations;
  row.best_value = state.history().empty() ? std::nan("") : state.history().best_value();
  row.iter_time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  row.fit_time_ms = std::chrono::duration<double, std::milli>(fit).count();
  row.gp_fits = state.counters().gp_fits;
  row.train_size = trained_on;
  row.suggested = *next;
  return row;
}

}  // namespace score
