/* SPDX-License-Identifier: Apache-2.0
 *
 * risre - resource-efficiency optimization for RIS-aided multi-user MIMO uplinks
 * Copyright (C) 2026 risre developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the risre shared library. All state lives behind opaque
 * handles; every fallible call returns a status code and leaves a detailed
 * message in risre_last_error() (thread-local).
 */

#ifndef RISRE_H
#define RISRE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum risre_status {
    RISRE_OK = 0,
    RISRE_ERR_INVALID_ARGUMENT = 1,
    RISRE_ERR_PARSE = 2,
    RISRE_ERR_SOLVER = 3,
    RISRE_ERR_IO = 4
} risre_status;

const char *risre_status_str(risre_status status);

/* Message of the most recent failure on this thread ("" if none). */
const char *risre_last_error(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct risre_config risre_config;

/* Built-in defaults (4 UTs x 2 antennas, 8 BS antennas, 32 RIS elements). */
risre_status risre_config_create_default(risre_config **out);
risre_status risre_config_load(const char *path, risre_config **out);
risre_status risre_config_save(const risre_config *cfg, const char *path);
/* Same keys and value syntax as the config file, e.g. ("p_max_dbm", "20"). */
risre_status risre_config_set(risre_config *cfg, const char *key, const char *value);
/* Canonical value string; buf is always NUL-terminated on success. */
risre_status risre_config_get(const risre_config *cfg, const char *key, char *buf,
                              size_t buflen);
void risre_config_destroy(risre_config *cfg);

/* ---- channel ----------------------------------------------------------- */

typedef struct risre_channel risre_channel;

risre_status risre_channel_generate(const risre_config *cfg, uint64_t seed,
                                    risre_channel **out);
void risre_channel_destroy(risre_channel *chan);

/* ---- solving ----------------------------------------------------------- */

typedef struct risre_solve_options {
    double eps;          /* outer stopping threshold, default 1e-4 */
    int max_outer;       /* default 50 */
    uint64_t mc_draws;   /* final Monte-Carlo validation draws, default 1000 */
    int mc_each_iter;    /* validate every iteration (expensive), default 0 */
} risre_solve_options;

void risre_solve_options_init(risre_solve_options *opts);

typedef struct risre_report risre_report;

/* mode is "re", "ee" or "se". */
risre_status risre_solve(const risre_config *cfg, const risre_channel *chan,
                         const char *mode, uint64_t seed,
                         const risre_solve_options *opts, risre_report **out);

/* scheme 1: fixed phases, optimized power; scheme 2: fixed phases, equal power. */
risre_status risre_baseline(const risre_config *cfg, const risre_channel *chan,
                            int scheme, uint64_t seed,
                            const risre_solve_options *opts, risre_report **out);

/* Scalar results: "se_de", "se_mc", "ee", "re", "p_sum_w", "wall_ms". */
risre_status risre_report_metric(const risre_report *rep, const char *name,
                                 double *out);
int risre_report_iterations(const risre_report *rep);
int risre_report_converged(const risre_report *rep);
/* Non-empty when a sub-solver aborted; the report carries a partial trace. */
const char *risre_report_error(const risre_report *rep);

/* Per-iteration trace of "se_de", "se_mc", "ee", "re", "f3" or "f5".
 * Writes min(cap, length) values; *len receives the full length. */
risre_status risre_report_trace(const risre_report *rep, const char *name,
                                double *buf, size_t cap, size_t *len);

/* Final RIS reflection coefficients (length = RIS element count). */
risre_status risre_report_phase(const risre_report *rep, double *re, double *im,
                                size_t cap, size_t *len);
/* Final per-stream transmit powers of one UT in watts. */
risre_status risre_report_power(const risre_report *rep, int ut, double *buf,
                                size_t cap, size_t *len);
void risre_report_destroy(risre_report *rep);

/* ---- experiment runners (CSV output) ----------------------------------- */

/* Single solve; writes one summary row. RISRE_ERR_SOLVER means the run
 * aborted but a partial row was still written. */
risre_status risre_run_solve_csv(const risre_config *cfg, const char *mode,
                                 uint64_t seed, const risre_solve_options *opts,
                                 const char *csv_path);

/* Single solve; writes the per-iteration trace. */
risre_status risre_run_convergence_csv(const risre_config *cfg, const char *mode,
                                       uint64_t seed,
                                       const risre_solve_options *opts,
                                       const char *csv_path);

/* grid_kind is "pmax_dbm", "beta_over_ptot" or "bits"; one row per value. */
risre_status risre_run_sweep_csv(const risre_config *cfg, const char *mode,
                                 const char *grid_kind, const double *values,
                                 size_t n_values, uint64_t seed,
                                 const risre_solve_options *opts, int jobs,
                                 const char *csv_path);

/* Blend-weight tradeoff: for each beta/P_tot ratio, sweeps the power budget
 * and records the (SE, EE) endpoints. */
risre_status risre_run_tradeoff_csv(const risre_config *cfg, const double *ratios,
                                    size_t n_ratios, const double *pmax_dbm,
                                    size_t n_pmax, uint64_t seed,
                                    const risre_solve_options *opts, int jobs,
                                    const char *csv_path);

/* Compares the asymptotic rate against Monte-Carlo at the equal-power
 * starting point over n_seeds channels; writes one row per seed and returns
 * the worst relative error. csv_path may be NULL. */
risre_status risre_validate_de(const risre_config *cfg, uint64_t seed,
                               int n_seeds, uint64_t draws, const char *csv_path,
                               double *max_rel_err);

#ifdef __cplusplus
}
#endif

#endif /* RISRE_H */
