/*
 * Copyright 2026 The SCORE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the SCORE library: dimension-decomposed Bayesian
 * optimization over discrete grids, a classical BO baseline, and the Ackley /
 * single-diode benchmark problems.
 *
 * All handles are opaque and owned by the caller; release them with the
 * matching *_destroy function. Functions returning score_status set a
 * thread-local message retrievable with score_last_error() on failure.
 * Status values double as CLI exit codes (0 ok, 2 config, 3 runtime).
 */
#ifndef SCORE_SCORE_H
#define SCORE_SCORE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SCORE_BUILDING_LIBRARY)
#    define SCORE_API __declspec(dllexport)
#  else
#    define SCORE_API __declspec(dllimport)
#  endif
#else
#  define SCORE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum score_status {
  SCORE_OK = 0,
  SCORE_ERR_ARGUMENT = 1, /* null handle or undersized buffer */
  SCORE_ERR_CONFIG = 2,
  SCORE_ERR_RUNTIME = 3,  /* solver, surrogate or unexpected failure */
  SCORE_ERR_IO = 4,
  SCORE_ERR_EXHAUSTED = 5 /* search space has no unevaluated tuples left */
} score_status;

typedef enum score_report_kind {
  SCORE_REPORT_CONVERGENCE = 0,
  SCORE_REPORT_TIMING = 1
} score_report_kind;

typedef struct score_config score_config;
typedef struct score_result score_result;
typedef struct score_optimizer score_optimizer;

typedef struct score_trace_row {
  size_t iteration;
  size_t evals;
  double best_value;
  double iter_time_ms;
  double cum_time_ms;
  double fit_time_ms;
  size_t gp_fits;
  size_t train_size;
} score_trace_row;

SCORE_API const char* score_last_error(void);
SCORE_API const char* score_version(void);

/* Configuration ---------------------------------------------------------- */

SCORE_API score_status score_config_create(score_config** out);
SCORE_API void score_config_destroy(score_config* config);
/* Overlays a flat JSON document read from `path`. */
SCORE_API score_status score_config_load(score_config* config, const char* path);
SCORE_API score_status score_config_parse_json(score_config* config, const char* json);
/* Sets one key from text, e.g. ("max_evals", "300"). */
SCORE_API score_status score_config_set(score_config* config, const char* key,
                                        const char* value);
SCORE_API score_status score_config_validate(const score_config* config);
/* Copies the configuration as JSON into buf (NUL-terminated). `needed`
 * receives the required size including the terminator. */
SCORE_API score_status score_config_to_json(const score_config* config, char* buf,
                                            size_t capacity, size_t* needed);

/* Experiments ------------------------------------------------------------ */

/* One experiment with the configured seed. */
SCORE_API score_status score_run(const score_config* config, score_result** out);
/* One experiment per configured seed. */
SCORE_API score_status score_sweep(const score_config* config, score_result** out);
SCORE_API void score_result_destroy(score_result* result);

SCORE_API size_t score_result_count(const score_result* result);
SCORE_API size_t score_result_rows(const score_result* result, size_t trace);
SCORE_API score_status score_result_row(const score_result* result, size_t trace, size_t row,
                                        score_trace_row* out);
SCORE_API score_status score_result_summary(const score_result* result, size_t trace,
                                            char* buf, size_t capacity, size_t* needed);
/* Best grid point found; `dims` receives the dimension count. */
SCORE_API score_status score_result_best_point(const score_result* result, size_t trace,
                                               double* out, size_t capacity, size_t* dims);
/* Writes <stem>.csv, <stem>_fit.csv, <stem>_convergence.svg and
 * <stem>_timing.svg into `dir`; with_median adds <stem>_median.csv. */
SCORE_API score_status score_result_write(const score_result* result, const char* dir,
                                          const char* stem, int with_median);

/* Re-renders CSV traces into <dir>/<stem>.csv and an SVG of `kind`. */
SCORE_API score_status score_report_from_csv(const char* const* paths, size_t count,
                                             score_report_kind kind, const char* dir,
                                             const char* stem);

/* Ask/tell optimizer over caller-defined grids --------------------------- */

/* grids[d] points at grid_sizes[d] strictly increasing values. n_init random
 * tuples are proposed by the first ask. */
SCORE_API score_status score_optimizer_create(const double* const* grids,
                                              const size_t* grid_sizes, size_t dims,
                                              size_t batch_size, size_t n_init, uint64_t seed,
                                              score_optimizer** out);
SCORE_API void score_optimizer_destroy(score_optimizer* opt);
/* Fills up to `max_tuples` tuples (dims indices each, row-major) into
 * `indices`; `count` receives the number written. Returns
 * SCORE_ERR_EXHAUSTED when nothing is left to propose. */
SCORE_API score_status score_optimizer_ask(score_optimizer* opt, uint32_t* indices,
                                           size_t max_tuples, size_t* count);
SCORE_API score_status score_optimizer_tell(score_optimizer* opt, const uint32_t* indices,
                                            double value);
SCORE_API score_status score_optimizer_best(const score_optimizer* opt, uint32_t* indices,
                                            double* value);
SCORE_API size_t score_optimizer_gp_fits(const score_optimizer* opt);

/* Problems and acquisition ----------------------------------------------- */

SCORE_API double score_expected_improvement(double mean, double std, double best,
                                            double zeta);
SCORE_API double score_ackley(const double* x, size_t n);
/* params = {I_L, I_o, R_s, R_sh, a}; targets = {isc, vmp, imp, voc}. */
SCORE_API score_status score_sdm_current(const double* params, double voltage,
                                         double* current);
SCORE_API score_status score_sdm_residual(const double* params, const double* targets,
                                          double* residual);
SCORE_API score_status score_sdm_datasheet(const double* params, double* targets);
/* Writes the synthetic datasheet fixture for `params` (NULL: defaults). */
SCORE_API score_status score_sdm_write_datasheet(const double* params, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SCORE_SCORE_H */
