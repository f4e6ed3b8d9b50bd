/*
 * Copyright 2026 The chaostomo Authors
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
 * C interface to libchaostomo.
 *
 * Objects are opaque handles created by ct_*_create/parse/run and released
 * with the matching ct_*_free. Every fallible call returns a ct_status; on
 * failure ct_last_error() describes the problem. The message is thread-local
 * and stays valid until the next failing call on the same thread.
 */
#ifndef CHAOSTOMO_H
#define CHAOSTOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CHAOSTOMO_BUILDING)
#    define CT_API __declspec(dllexport)
#  else
#    define CT_API __declspec(dllimport)
#  endif
#else
#  define CT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ct_status {
    CT_OK = 0,
    CT_ERR_PARAMETER = 1,
    CT_ERR_VALIDATION = 2,
    CT_ERR_SOLVER = 3,
    CT_ERR_NUMERIC = 4,
    CT_ERR_IO = 5,
    CT_ERR_USAGE = 6,
    CT_ERR_NULL_ARGUMENT = 7,
    CT_ERR_INTERNAL = 99
} ct_status;

typedef enum ct_format { CT_FORMAT_CSV = 0, CT_FORMAT_JSON = 1 } ct_format;

typedef struct ct_config ct_config;
typedef struct ct_results ct_results;

/* One aggregated row. `dynamics` is owned by the results handle. */
typedef struct ct_row {
    const char* dynamics;
    int has_lambda;
    double lambda;
    int step;
    double fidelity_mean, fidelity_se;
    double fisher_mean, fisher_se;
    double mutinfo_mean, mutinfo_se;
    double entropy_mean, entropy_se;
    double hs_mean, hs_se;
    int unconverged;
    double max_optimality_gap;
    double min_amgm_slack;
} ct_row;

CT_API const char* ct_version(void);
CT_API const char* ct_last_error(void);
CT_API const char* ct_status_name(ct_status status);

/* Configuration. Defaults: j=10, alpha=1.4, lambdas {0.5, 2, 7}, COE on,
 * 100 steps, 100 states, kappa=j/100, reg-eps 1e-6, stride 1, seed 1. */
CT_API ct_status ct_config_create(ct_config** out);
/* Parses `run` arguments (argv excludes program and subcommand names). */
CT_API ct_status ct_config_parse(int argc, const char* const* argv, ct_config** out);
CT_API void ct_config_free(ct_config* cfg);

CT_API ct_status ct_config_set_spin(ct_config* cfg, double j);
CT_API ct_status ct_config_set_alpha(ct_config* cfg, double alpha);
CT_API ct_status ct_config_set_lambdas(ct_config* cfg, const double* values, size_t count);
CT_API ct_status ct_config_set_coe(ct_config* cfg, int include, int draws);
CT_API ct_status ct_config_set_steps(ct_config* cfg, int steps, int stride);
CT_API ct_status ct_config_set_ensemble(ct_config* cfg, int ensemble);
CT_API ct_status ct_config_set_kappa(ct_config* cfg, double kappa);
CT_API ct_status ct_config_set_seed(ct_config* cfg, uint64_t seed);
CT_API ct_status ct_config_set_threads(ct_config* cfg, int threads);
CT_API ct_status ct_config_set_solver(ct_config* cfg, int max_iters, double tol, double reg_eps);

/* Borrowed; empty string when no output path was configured. */
CT_API const char* ct_config_output_path(const ct_config* cfg);
CT_API ct_format ct_config_format(const ct_config* cfg);

CT_API ct_status ct_run(const ct_config* cfg, ct_results** out);
CT_API void ct_results_free(ct_results* results);
CT_API size_t ct_results_row_count(const ct_results* results);
CT_API ct_status ct_results_row(const ct_results* results, size_t index, ct_row* out);
CT_API ct_status ct_results_write(const ct_results* results, const char* path, ct_format format);
/* Writes to stdout. */
CT_API ct_status ct_results_print(const ct_results* results, ct_format format);
/* Parses a JSON document produced by ct_results_write. */
CT_API ct_status ct_results_read_json(const char* path, ct_results** out);

/* Debug dumps of the kicked-top design matrix and of one noisy record for a
 * Haar state drawn from (seed, member). */
CT_API ct_status ct_write_design_csv(double j, double alpha, double lambda, int steps, const char* path);
CT_API ct_status ct_write_record_csv(double j, double alpha, double lambda, int steps, double kappa,
                                     uint64_t seed, uint64_t member, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CHAOSTOMO_H */
