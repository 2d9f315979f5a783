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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>

#include "score/bench.hpp"
#include "score/error.hpp"

namespace score::bench {

problems::Problem build_problem(const RunConfig& config) {
  if (config.problem == ProblemKind::kAckley) {
    problems::AckleySpec spec;
    spec.dims = config.dims;
    spec.lo = config.ackley_lo;
    spec.hi = config.ackley_hi;
    return problems::make_ackley_problem(spec, config.ackley_points);
  }
  const problems::IvTargets targets =
      config.datasheet.empty()
          ? problems::make_synthetic_datasheet(problems::SdmParams{})
          : problems::read_datasheet(config.datasheet).targets;
  auto grids = problems::sdm_space(targets).grids();
  for (const auto& [name, g] : config.sdm_grids) {
    for (auto& grid : grids) {
      if (grid.name() == name) grid = make_grid(g.lo, g.hi, g.count, g.scale, name);
    }
  }
  return problems::make_sdm_problem(targets, SearchSpace(std::move(grids)));
}

namespace {

ScoreOptions score_options(const RunConfig& c) {
  ScoreOptions o;
  o.batch_size = c.batch_size;
  o.zeta = {c.zeta, c.zeta_decay};
  o.lengthscale_steps = c.lengthscale_steps;
  o.signal_variance = c.signal_variance;
  o.noise_variance = c.noise_variance;
  o.jitter = c.jitter;
  o.temperature = c.temperature;
  o.parallel_objective = c.parallel_objective;
  return o;
}

BoOptions bo_options(const RunConfig& c) {
  BoOptions o;
  o.candidate_pool_size = c.candidate_pool;
  o.zeta = {c.bo_zeta, c.zeta_decay};
  o.lengthscale = c.bo_lengthscale;
  o.signal_variance = c.signal_variance;
  o.noise_variance = c.bo_noise_variance;
  o.jitter = c.jitter;
  return o;
}

template <class State, class Step>
void drive(State& state, const Objective& objective, const RunConfig& config, Step step,
           ExperimentResult& out) {
  auto& rows = out.trace.rows;
  rows.push_back(state.initialize(objective, config.effective_n_init()));
  while (state.counters().evaluations < config.max_evals) {
    auto row = step(state, objective, config.max_evals - state.counters().evaluations);
    if (!row) break;
    rows.push_back(std::move(*row));
  }
  double cum = 0.0;
  for (auto& r : rows) {
    cum += r.iter_time_ms;
    r.cum_time_ms = cum;
  }
  out.counters = state.counters();
  if (!state.history().empty()) {
    out.best_indices = state.history().best().indices;
    out.best_point = state.history().best().point;
  }
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  config.validate();
  problems::Problem problem = build_problem(config);
  auto sentinels = std::make_shared<std::atomic<std::size_t>>(0);
  Objective objective = [f = problem.objective, sentinels](std::span<const double> x) {
    const double v = f(x);
    // A failed inner solve is a failed evaluation: the optimizers drop
    // non-finite values after marking the tuple evaluated.
    if (v == problems::kResidualSentinel) {
      ++*sentinels;
      return std::numeric_limits<double>::quiet_NaN();
    }
    return v;
  };

  ExperimentResult out;
  out.trace.method = method_name(config.method);
  out.trace.problem = problem.name;
  out.trace.seed = config.seed;
  if (config.method == Method::kScore) {
    auto opts = score_options(config);
    opts.parallel_objective = opts.parallel_objective && problem.pure;
    ScoreState state(problem.space, opts, config.seed);
    drive(state, objective, config,
          [](ScoreState& s, const Objective& f, std::size_t left) {
            return score_step(s, f, left);
          },
          out);
  } else {
    BoState state(problem.space, bo_options(config), config.seed);
    drive(state, objective, config,
          [](BoState& s, const Objective& f, std::size_t) { return bo_step(s, f); }, out);
  }
  out.gp_fits = out.counters.gp_fits;
  out.fit_time_ms = std::chrono::duration<double, std::milli>(out.counters.fit_time).count();
  out.total_time_ms = out.trace.rows.empty() ? 0.0 : out.trace.rows.back().cum_time_ms;
  out.sentinel_evaluations = sentinels->load();
  return out;
}

std::vector<ExperimentResult> run_sweep(const RunConfig& config) {
  std::vector<std::uint64_t> seeds = config.seeds;
  if (seeds.empty()) seeds.push_back(config.seed);
  config.validate();
  std::vector<ExperimentResult> out;
  if (config.concurrent) {
    std::vector<std::future<ExperimentResult>> pending;
    for (auto s : seeds) {
      RunConfig c = config;
      c.seed = s;
      pending.push_back(std::async(std::launch::async, [c] { return run_experiment(c); }));
    }
    for (auto& f : pending) out.push_back(f.get());
  } else {
    for (auto s : seeds) {
      RunConfig c = config;
      c.seed = s;
      out.push_back(run_experiment(c));
    }
  }
  return out;
}

ConvergenceTrace median_trace(const std::vector<ConvergenceTrace>& traces) {
  ConvergenceTrace m;
  if (traces.empty()) return m;
  m.method = traces.front().method + "-median";
  m.problem = traces.front().problem;
  std::size_t longest = 0;
  for (const auto& t : traces) longest = std::max(longest, t.rows.size());
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  for (std::size_t i = 0; i < longest; ++i) {
    std::vector<double> best, iter, cum, evals;
    for (const auto& t : traces) {
      if (i >= t.rows.size()) continue;
      best.push_back(t.rows[i].best_value);
      iter.push_back(t.rows[i].iter_time_ms);
      cum.push_back(t.rows[i].cum_time_ms);
      evals.push_back(static_cast<double>(t.rows[i].evals));
    }
    TraceRow r;
    r.iteration = i;
    r.evals = static_cast<std::size_t>(std::llround(median(evals)));
    r.best_value = median(best);
    r.iter_time_ms = median(iter);
    r.cum_time_ms = median(cum);
    m.rows.push_back(r);
  }
  return m;
}

std::string summary_line(const ExperimentResult& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << r.trace.method << " " << r.trace.problem << " seed=" << r.trace.seed
     << " best=" << (r.trace.rows.empty() ? std::nan("") : r.trace.rows.back().best_value)
     << " evals=" << r.counters.evaluations << " iterations="
     << (r.trace.rows.empty() ? 0 : r.trace.rows.size() - 1) << " gp_fits=" << r.gp_fits
     << std::setprecision(4) << " fit_ms=" << r.fit_time_ms << " total_ms=" << r.total_time_ms;
  if (r.counters.dropped) os << " dropped=" << r.counters.dropped;
  if (r.sentinel_evaluations) os << " solver_failures=" << r.sentinel_evaluations;
  return os.str();
}

}  // namespace score::bench
