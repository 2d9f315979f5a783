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

#include "score/score.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "score/acquisition.hpp"
#include "score/bench.hpp"
#include "score/error.hpp"
#include "score/problems.hpp"
#include "score/score_engine.hpp"

struct score_config {
  score::bench::RunConfig config;
};

struct score_result {
  std::vector<score::bench::ExperimentResult> runs;
};

struct score_optimizer {
  std::unique_ptr<score::ScoreState> state;
  std::size_t n_init = 0;
  bool initialized = false;
};

namespace {

thread_local std::string g_last_error;

score_status fail(score_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
score_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const score::ConfigError& e) {
    return fail(SCORE_ERR_CONFIG, e.what());
  } catch (const score::IoError& e) {
    return fail(SCORE_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SCORE_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(SCORE_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SCORE_ERR_RUNTIME, "unknown error");
  }
}

score_status copy_string(const std::string& s, char* buf, std::size_t capacity,
                         std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf) return SCORE_OK;
  if (capacity < s.size() + 1) return fail(SCORE_ERR_ARGUMENT, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SCORE_OK;
}

score::problems::SdmParams sdm_params(const double* p) {
  score::problems::SdmParams out{p[0], p[1], p[2], p[3], p[4]};
  out.validate();
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw score::IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw score::IoError("error writing '" + path.string() + "'");
}

}  // namespace

extern "C" {

const char* score_last_error(void) { return g_last_error.c_str(); }
const char* score_version(void) { return "0.1.0"; }

score_status score_config_create(score_config** out) {
  if (!out) return fail(SCORE_ERR_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new score_config{};
    return SCORE_OK;
  });
}

void score_config_destroy(score_config* config) { delete config; }

score_status score_config_load(score_config* config, const char* path) {
  if (!config || !path) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    config->config = score::bench::load_config(path, config->config);
    return SCORE_OK;
  });
}

score_status score_config_parse_json(score_config* config, const char* json) {
  if (!config || !json) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    config->config = score::bench::config_from_json(json, config->config);
    return SCORE_OK;
  });
}

score_status score_config_set(score_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    config->config.set(key, value);
    return SCORE_OK;
  });
}

score_status score_config_validate(const score_config* config) {
  if (!config) return fail(SCORE_ERR_ARGUMENT, "null config");
  return guarded([&] {
    config->config.validate();
    return SCORE_OK;
  });
}

score_status score_config_to_json(const score_config* config, char* buf, size_t capacity,
                                  size_t* needed) {
  if (!config) return fail(SCORE_ERR_ARGUMENT, "null config");
  return guarded([&] { return copy_string(config->config.to_json(), buf, capacity, needed); });
}

score_status score_run(const score_config* config, score_result** out) {
  if (!config || !out) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = std::make_unique<score_result>();
    r->runs.push_back(score::bench::run_experiment(config->config));
    *out = r.release();
    return SCORE_OK;
  });
}

score_status score_sweep(const score_config* config, score_result** out) {
  if (!config || !out) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = std::make_unique<score_result>();
    r->runs = score::bench::run_sweep(config->config);
    *out = r.release();
    return SCORE_OK;
  });
}

void score_result_destroy(score_result* result) { delete result; }

size_t score_result_count(const score_result* result) {
  return result ? result->runs.size() : 0;
}

size_t score_result_rows(const score_result* result, size_t trace) {
  if (!result || trace >= result->runs.size()) return 0;
  return result->runs[trace].trace.rows.size();
}

score_status score_result_row(const score_result* result, size_t trace, size_t row,
                              score_trace_row* out) {
  if (!result || !out || trace >= result->runs.size() ||
      row >= result->runs[trace].trace.rows.size()) {
    return fail(SCORE_ERR_ARGUMENT, "trace or row out of range");
  }
  const auto& r = result->runs[trace].trace.rows[row];
  *out = {r.iteration,   r.evals,       r.best_value, r.iter_time_ms,
          r.cum_time_ms, r.fit_time_ms, r.gp_fits,    r.train_size};
  return SCORE_OK;
}

score_status score_result_summary(const score_result* result, size_t trace, char* buf,
                                  size_t capacity, size_t* needed) {
  if (!result || trace >= result->runs.size()) {
    return fail(SCORE_ERR_ARGUMENT, "trace out of range");
  }
  return guarded([&] {
    return copy_string(score::bench::summary_line(result->runs[trace]), buf, capacity, needed);
  });
}

score_status score_result_best_point(const score_result* result, size_t trace, double* out,
                                     size_t capacity, size_t* dims) {
  if (!result || trace >= result->runs.size()) {
    return fail(SCORE_ERR_ARGUMENT, "trace out of range");
  }
  const auto& p = result->runs[trace].best_point;
  if (dims) *dims = p.size();
  if (!out) return SCORE_OK;
  if (capacity < p.size()) return fail(SCORE_ERR_ARGUMENT, "buffer too small");
  std::copy(p.begin(), p.end(), out);
  return SCORE_OK;
}

score_status score_result_write(const score_result* result, const char* dir,
                                const char* stem, int with_median) {
  if (!result || !dir || !stem || result->runs.empty()) {
    return fail(SCORE_ERR_ARGUMENT, "null argument or empty result");
  }
  return guarded([&] {
    std::vector<score::ConvergenceTrace> traces;
    for (const auto& r : result->runs) traces.push_back(r.trace);
    using score::bench::ReportKind;
    score::bench::emit_report(traces, ReportKind::kConvergence, dir, stem);
    score::bench::emit_report(traces, ReportKind::kTiming, dir, stem);
    const std::filesystem::path base(dir);
    write_text(base / (std::string(stem) + "_fit.csv"), score::bench::format_fit_csv(traces));
    if (with_median) {
      score::bench::write_trace_csv((base / (std::string(stem) + "_median.csv")).string(),
                                    {score::bench::median_trace(traces)});
    }
    return SCORE_OK;
  });
}

score_status score_report_from_csv(const char* const* paths, size_t count,
                                   score_report_kind kind, const char* dir, const char* stem) {
  if (!paths || count == 0 || !dir || !stem) return fail(SCORE_ERR_ARGUMENT, "no inputs");
  return guarded([&] {
    std::vector<score::ConvergenceTrace> traces;
    for (size_t i = 0; i < count; ++i) {
      if (!paths[i]) return fail(SCORE_ERR_ARGUMENT, "null path");
      for (auto& t : score::bench::read_trace_csv(paths[i])) traces.push_back(std::move(t));
    }
    score::bench::emit_report(traces,
                              kind == SCORE_REPORT_TIMING ? score::bench::ReportKind::kTiming
                                                          : score::bench::ReportKind::kConvergence,
                              dir, stem);
    return SCORE_OK;
  });
}

score_status score_optimizer_create(const double* const* grids, const size_t* grid_sizes,
                                    size_t dims, size_t batch_size, size_t n_init,
                                    uint64_t seed, score_optimizer** out) {
  if (!grids || !grid_sizes || !out || dims == 0) {
    return fail(SCORE_ERR_ARGUMENT, "null grids or zero dimensions");
  }
  return guarded([&] {
    std::vector<score::ParameterGrid> gs;
    for (size_t d = 0; d < dims; ++d) {
      if (!grids[d]) return fail(SCORE_ERR_ARGUMENT, "null grid");
      gs.emplace_back("x" + std::to_string(d),
                      std::vector<double>(grids[d], grids[d] + grid_sizes[d]));
    }
    if (n_init < 1) throw score::ConfigError("n_init must be >= 1");
    score::ScoreOptions opts;
    opts.batch_size = batch_size;
    auto opt = std::make_unique<score_optimizer>();
    opt->state = std::make_unique<score::ScoreState>(
        std::make_shared<const score::SearchSpace>(std::move(gs)), opts, seed);
    opt->n_init = n_init;
    *out = opt.release();
    return SCORE_OK;
  });
}

void score_optimizer_destroy(score_optimizer* opt) { delete opt; }

score_status score_optimizer_ask(score_optimizer* opt, uint32_t* indices, size_t max_tuples,
                                 size_t* count) {
  if (!opt || !indices || !count) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto& st = *opt->state;
    std::vector<score::IndexTuple> batch;
    if (!opt->initialized) {
      batch = score::random_design(st.space(), std::min(opt->n_init, max_tuples), st.rng(),
                                   st.evaluated());
    } else {
      std::vector<std::vector<double>> scores(st.space().dims());
      for (size_t d = 0; d < scores.size(); ++d) {
        auto ds = score::score_dimension(st, d);
        if (!st.projections().observed(d).empty()) ++st.mutable_counters().gp_fits;
        st.mutable_counters().fit_time += ds.fit_time;
        scores[d] = std::move(ds.scores);
      }
      batch = score::select_batch(st, scores, max_tuples);
      st.advance_iteration();
    }
    *count = batch.size();
    if (batch.empty()) return fail(SCORE_ERR_EXHAUSTED, "search space exhausted");
    opt->initialized = true;
    const size_t dims = st.space().dims();
    for (size_t i = 0; i < batch.size(); ++i) {
      std::copy(batch[i].begin(), batch[i].end(), indices + i * dims);
    }
    return SCORE_OK;
  });
}

score_status score_optimizer_tell(score_optimizer* opt, const uint32_t* indices, double value) {
  if (!opt || !indices) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const size_t dims = opt->state->space().dims();
    opt->state->observe(score::IndexTuple(indices, indices + dims), value);
    return SCORE_OK;
  });
}

score_status score_optimizer_best(const score_optimizer* opt, uint32_t* indices,
                                  double* value) {
  if (!opt) return fail(SCORE_ERR_ARGUMENT, "null optimizer");
  const auto& h = opt->state->history();
  if (h.empty()) return fail(SCORE_ERR_RUNTIME, "no finite evaluations yet");
  if (indices) std::copy(h.best().indices.begin(), h.best().indices.end(), indices);
  if (value) *value = h.best_value();
  return SCORE_OK;
}

size_t score_optimizer_gp_fits(const score_optimizer* opt) {
  return opt ? opt->state->counters().gp_fits : 0;
}

double score_expected_improvement(double mean, double std, double best, double zeta) {
  return score::expected_improvement({mean, std}, {best, zeta});
}

double score_ackley(const double* x, size_t n) {
  return score::problems::ackley(std::span<const double>(x, n));
}

score_status score_sdm_current(const double* params, double voltage, double* current) {
  if (!params || !current) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *current = score::problems::sdm_current(sdm_params(params), voltage);
    return SCORE_OK;
  });
}

score_status score_sdm_residual(const double* params, const double* targets,
                                double* residual) {
  if (!params || !targets || !residual) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    score::problems::IvTargets t{targets[0], targets[1], targets[2], targets[3]};
    t.validate();
    *residual = score::problems::sdm_residual(sdm_params(params), t);
    return SCORE_OK;
  });
}

score_status score_sdm_datasheet(const double* params, double* targets) {
  if (!params || !targets) return fail(SCORE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto t = score::problems::make_synthetic_datasheet(sdm_params(params));
    targets[0] = t.isc;
    targets[1] = t.vmp;
    targets[2] = t.imp;
    targets[3] = t.voc;
    return SCORE_OK;
  });
}

score_status score_sdm_write_datasheet(const double* params, const char* path) {
  if (!path) return fail(SCORE_ERR_ARGUMENT, "null path");
  return guarded([&] {
    const auto gt = params ? sdm_params(params) : score::problems::SdmParams{};
    score::problems::write_datasheet(path, {score::problems::make_synthetic_datasheet(gt), gt});
    return SCORE_OK;
  });
}

}  // extern "C"
