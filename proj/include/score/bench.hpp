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
#include <optional>
#include <string>
#include <vector>

#include "score/baseline_bo.hpp"
#include "score/param_space.hpp"
#include "score/problems.hpp"
#include "score/score_engine.hpp"
#include "score/trace.hpp"

namespace score::bench {

enum class Method { kScore, kBo };
enum class ProblemKind { kAckley, kSdm };
enum class ReportKind { kConvergence, kTiming };

/// Grid override for one SDM parameter, written "lo,hi,count,scale".
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 2;
  GridScale scale = GridScale::kLinear;
};

/// Flat experiment configuration. Every field has a default; JSON documents
/// and command-line flags override individual keys.
struct RunConfig {
  Method method = Method::kScore;
  ProblemKind problem = ProblemKind::kAckley;
  std::size_t dims = 10;
  std::size_t ackley_points = 61;
  double ackley_lo = -5.0;
  double ackley_hi = 10.0;
  std::size_t n_init = 0;  // 0 selects 2 * dims
  std::size_t batch_size = 1;
  std::size_t max_evals = 300;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  // SCORE surrogate settings
  double zeta = 0.1;
  double zeta_decay = 1.0;
  double lengthscale_steps = 0.35;
  double noise_variance = 5e-3;
  double temperature = 0.12;
  // joint-GP baseline settings
  double bo_zeta = 0.01;
  double bo_lengthscale = 0.2;
  double bo_noise_variance = 1e-2;
  // shared
  double signal_variance = 1.0;
  double jitter = 1e-12;
  std::size_t candidate_pool = 1000;
  std::string datasheet;  // empty: synthetic sheet from the default parameters
  std::vector<std::pair<std::string, GridSpec>> sdm_grids;
  std::string out_dir = "out";
  bool concurrent = false;
  bool parallel_objective = false;

  std::size_t effective_n_init() const;
  /// Throws ConfigError on violated invariants.
  void validate() const;

  /// Sets one key from its textual value (flag or JSON scalar).
  void set(const std::string& key, const std::string& value);
  std::string to_json() const;
};

/// Parses a flat JSON object; unknown keys are configuration errors.
RunConfig config_from_json(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

std::string method_name(Method m);
std::string problem_name(ProblemKind p);

struct ExperimentResult {
  ConvergenceTrace trace;
  RunCounters counters;
  IndexTuple best_indices;
  std::vector<double> best_point;
  std::size_t gp_fits = 0;
  double total_time_ms = 0.0;
  double fit_time_ms = 0.0;
  std::size_t sentinel_evaluations = 0;  // SDM solver failures
};

problems::Problem build_problem(const RunConfig& config);
ExperimentResult run_experiment(const RunConfig& config);

/// One run per seed (config.seeds, or config.seed if empty); concurrently
/// when config.concurrent.
std::vector<ExperimentResult> run_sweep(const RunConfig& config);

/// Row-wise median across traces of equal length (shorter traces stop
/// contributing once exhausted).
ConvergenceTrace median_trace(const std::vector<ConvergenceTrace>& traces);

// CSV ----------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "method,seed,iteration,evals,best_value,iter_time_ms,cum_time_ms";

std::string format_trace_csv(const std::vector<ConvergenceTrace>& traces);
std::vector<ConvergenceTrace> parse_trace_csv(const std::string& text);
void write_trace_csv(const std::string& path, const std::vector<ConvergenceTrace>& traces);
std::vector<ConvergenceTrace> read_trace_csv(const std::string& path);

/// Per-iteration GP-fit timing (method, seed, iteration, train_size,
/// fit_time_ms, gp_fits).
std::string format_fit_csv(const std::vector<ConvergenceTrace>& traces);

// Plots --------------------------------------------------------------------

/// Line plot of best_value vs evals (convergence) or cum_time_ms vs
/// iteration (timing), traces overlaid with a legend.
std::string render_svg(const std::vector<ConvergenceTrace>& traces, ReportKind kind);

struct ReportFiles {
  std::string csv;
  std::string svg;
};

/// Writes <dir>/<stem>.csv and <dir>/<stem>_<kind>.svg. Throws IoError when
/// the directory cannot be created or written.
ReportFiles emit_report(const std::vector<ConvergenceTrace>& traces, ReportKind kind,
                        const std::string& dir, const std::string& stem);

std::string summary_line(const ExperimentResult& result);

}  // namespace score::bench
