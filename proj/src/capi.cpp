// Copyright 2026 The chaostomo Authors
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

#include "chaostomo/chaostomo.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chaostomo/errors.hpp"
#include "chaostomo/experiment.hpp"
#include "chaostomo/measurement.hpp"

struct ct_config {
    chaostomo::ExperimentConfig cfg;
};

struct ct_results {
    chaostomo::ResultsTable table;
};

namespace {

thread_local std::string last_error;

ct_status fail(ct_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class Fn>
ct_status guarded(Fn&& fn) {
    try {
        fn();
        return CT_OK;
    } catch (const chaostomo::UsageError& e) {
        return fail(CT_ERR_USAGE, e.what());
    } catch (const chaostomo::ParameterError& e) {
        return fail(CT_ERR_PARAMETER, e.what());
    } catch (const chaostomo::ValidationError& e) {
        return fail(CT_ERR_VALIDATION, e.what());
    } catch (const chaostomo::SolverError& e) {
        return fail(CT_ERR_SOLVER, e.what());
    } catch (const chaostomo::NumericError& e) {
        return fail(CT_ERR_NUMERIC, e.what());
    } catch (const chaostomo::IoError& e) {
        return fail(CT_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(CT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CT_ERR_INTERNAL, "unknown exception");
    }
}

#define CT_REQUIRE(ptr)                                                  \
    do {                                                                 \
        if ((ptr) == nullptr) return fail(CT_ERR_NULL_ARGUMENT, #ptr " is null"); \
    } while (0)

chaostomo::OutputFormat to_format(ct_format f) {
    return f == CT_FORMAT_JSON ? chaostomo::OutputFormat::Json : chaostomo::OutputFormat::Csv;
}

// Setters validate the whole config so errors surface at the offending call.
template <class Fn>
ct_status update(ct_config* cfg, Fn&& fn) {
    CT_REQUIRE(cfg);
    return guarded([&] {
        chaostomo::ExperimentConfig next = cfg->cfg;
        fn(next);
        next.validate();
        cfg->cfg = std::move(next);
    });
}

}  // namespace

extern "C" {

const char* ct_version(void) { return "0.1.0"; }

const char* ct_last_error(void) { return last_error.c_str(); }

const char* ct_status_name(ct_status status) {
    switch (status) {
        case CT_OK: return "ok";
        case CT_ERR_PARAMETER: return "parameter error";
        case CT_ERR_VALIDATION: return "validation error";
        case CT_ERR_SOLVER: return "solver error";
        case CT_ERR_NUMERIC: return "numeric error";
        case CT_ERR_IO: return "I/O error";
        case CT_ERR_USAGE: return "usage error";
        case CT_ERR_NULL_ARGUMENT: return "null argument";
        case CT_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

ct_status ct_config_create(ct_config** out) {
    CT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new ct_config{}; });
}

ct_status ct_config_parse(int argc, const char* const* argv, ct_config** out) {
    CT_REQUIRE(out);
    *out = nullptr;
    if (argc > 0) CT_REQUIRE(argv);
    return guarded([&] {
        std::vector<std::string> args(argv, argv + argc);
        *out = new ct_config{chaostomo::parse_config(args)};
    });
}

void ct_config_free(ct_config* cfg) { delete cfg; }

ct_status ct_config_set_spin(ct_config* cfg, double j) {
    return update(cfg, [&](auto& c) { c.j = j; });
}

ct_status ct_config_set_alpha(ct_config* cfg, double alpha) {
    return update(cfg, [&](auto& c) { c.alpha = alpha; });
}

ct_status ct_config_set_lambdas(ct_config* cfg, const double* values, size_t count) {
    if (count > 0) CT_REQUIRE(values);
    return update(cfg, [&](auto& c) { c.lambdas.assign(values, values + count); });
}

ct_status ct_config_set_coe(ct_config* cfg, int include, int draws) {
    return update(cfg, [&](auto& c) {
        c.include_coe = include != 0;
        c.coe_draws = draws;
    });
}

ct_status ct_config_set_steps(ct_config* cfg, int steps, int stride) {
    return update(cfg, [&](auto& c) {
        c.steps = steps;
        c.stride = stride;
    });
}

ct_status ct_config_set_ensemble(ct_config* cfg, int ensemble) {
    return update(cfg, [&](auto& c) { c.ensemble = ensemble; });
}

ct_status ct_config_set_kappa(ct_config* cfg, double kappa) {
    return update(cfg, [&](auto& c) { c.kappa = kappa; });
}

ct_status ct_config_set_seed(ct_config* cfg, uint64_t seed) {
    return update(cfg, [&](auto& c) { c.seed = seed; });
}

ct_status ct_config_set_threads(ct_config* cfg, int threads) {
    return update(cfg, [&](auto& c) { c.threads = threads; });
}

ct_status ct_config_set_solver(ct_config* cfg, int max_iters, double tol, double reg_eps) {
    return update(cfg, [&](auto& c) {
        c.max_iters = max_iters;
        c.tol = tol;
        c.eps_rel = reg_eps;
    });
}

const char* ct_config_output_path(const ct_config* cfg) {
    return cfg == nullptr ? "" : cfg->cfg.output_path.c_str();
}

ct_format ct_config_format(const ct_config* cfg) {
    if (cfg == nullptr) return CT_FORMAT_CSV;
    return cfg->cfg.format == chaostomo::OutputFormat::Json ? CT_FORMAT_JSON : CT_FORMAT_CSV;
}

ct_status ct_run(const ct_config* cfg, ct_results** out) {
    CT_REQUIRE(cfg);
    CT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new ct_results{chaostomo::run_experiment(cfg->cfg)}; });
}

void ct_results_free(ct_results* results) { delete results; }

size_t ct_results_row_count(const ct_results* results) {
    return results == nullptr ? 0 : results->table.rows.size();
}

ct_status ct_results_row(const ct_results* results, size_t index, ct_row* out) {
    CT_REQUIRE(results);
    CT_REQUIRE(out);
    if (index >= results->table.rows.size()) {
        return fail(CT_ERR_PARAMETER, "row index " + std::to_string(index) + " out of range");
    }
    const chaostomo::ResultsRow& r = results->table.rows[index];
    *out = ct_row{};
    out->dynamics = r.dynamics.c_str();
    out->has_lambda = r.lambda.has_value() ? 1 : 0;
    out->lambda = r.lambda.value_or(0.0);
    out->step = r.step;
    out->fidelity_mean = r.fidelity.mean;
    out->fidelity_se = r.fidelity.se;
    out->fisher_mean = r.fisher.mean;
    out->fisher_se = r.fisher.se;
    out->mutinfo_mean = r.mutual_info.mean;
    out->mutinfo_se = r.mutual_info.se;
    out->entropy_mean = r.entropy.mean;
    out->entropy_se = r.entropy.se;
    out->hs_mean = r.hs_distance.mean;
    out->hs_se = r.hs_distance.se;
    out->unconverged = r.unconverged;
    out->max_optimality_gap = r.max_optimality_gap;
    out->min_amgm_slack = r.min_amgm_slack;
    return CT_OK;
}

ct_status ct_results_write(const ct_results* results, const char* path, ct_format format) {
    CT_REQUIRE(results);
    CT_REQUIRE(path);
    return guarded([&] { chaostomo::emit_results(results->table, std::string(path), to_format(format)); });
}

ct_status ct_results_print(const ct_results* results, ct_format format) {
    CT_REQUIRE(results);
    return guarded([&] {
        chaostomo::emit_results(results->table, std::cout, to_format(format));
        std::cout.flush();
        if (!std::cout) throw chaostomo::IoError("write to stdout failed");
    });
}

ct_status ct_results_read_json(const char* path, ct_results** out) {
    CT_REQUIRE(path);
    CT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw chaostomo::IoError(std::string("cannot open '") + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        *out = new ct_results{chaostomo::results_from_json(buf.str())};
    });
}

ct_status ct_write_design_csv(double j, double alpha, double lambda, int steps, const char* path) {
    CT_REQUIRE(path);
    return guarded([&] {
        using namespace chaostomo;
        const Spin spin = Spin::from_value(j);
        const auto series = heisenberg_series(build_floquet({spin, alpha, lambda}), build_jz(spin), steps);
        write_design_csv(std::string(path), design_matrix(series, gell_mann_basis(spin.dim())));
    });
}

ct_status ct_write_record_csv(double j, double alpha, double lambda, int steps, double kappa,
                              uint64_t seed, uint64_t member, const char* path) {
    CT_REQUIRE(path);
    return guarded([&] {
        using namespace chaostomo;
        const Spin spin = Spin::from_value(j);
        const auto series = heisenberg_series(build_floquet({spin, alpha, lambda}), build_jz(spin), steps);
        SeededRng state_rng(seed, stream_id(StreamPurpose::State, member));
        const StateVector psi = haar_pure_state(spin.dim(), state_rng);
        SeededRng noise_rng(seed, stream_id(StreamPurpose::Noise, member));
        const Record rec = simulate_record(psi * psi.adjoint(), series, kappa, noise_rng);
        write_record_csv(std::string(path), rec);
    });
}

}  // extern "C"
