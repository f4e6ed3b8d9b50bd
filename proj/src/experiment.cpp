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

#include "chaostomo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chaostomo/errors.hpp"
#include "chaostomo/spin_ops.hpp"

namespace chaostomo {

void ExperimentConfig::validate() const {
    try {
        (void)Spin::from_value(j);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    if (!std::isfinite(alpha)) throw UsageError("alpha must be finite");
    for (double lam : lambdas) {
        if (!std::isfinite(lam)) throw UsageError("lambda values must be finite");
    }
    if (lambdas.empty() && !include_coe) throw UsageError("no dynamics selected: give --lambda or --coe");
    if (coe_draws < 1) throw UsageError("coe draws must be >= 1");
    if (steps < 1) throw UsageError("steps must be >= 1");
    if (ensemble < 1) throw UsageError("ensemble must be >= 1");
    if (kappa && !(std::isfinite(*kappa) && *kappa >= 0.0)) throw UsageError("kappa must be >= 0");
    if (!(std::isfinite(eps_rel) && eps_rel > 0.0)) throw UsageError("reg-eps must be > 0");
    if (stride < 1) throw UsageError("stride must be >= 1");
    if (max_iters < 1) throw UsageError("max-iters must be >= 1");
    if (!(tol > 0.0)) throw UsageError("tol must be > 0");
    if (threads < 0) throw UsageError("threads must be >= 0");
}

std::vector<int> estimation_steps(int steps, int stride) {
    std::vector<int> out;
    for (int n = steps; n >= 1; n -= stride) out.push_back(n);
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct Dynamics {
    std::string label;
    std::optional<double> lambda;
    // one entry per unitary draw (kicked top: exactly one)
    std::vector<std::vector<Operator>> series;
    std::vector<DesignMatrix> designs;
};

// Design-only quantities for one prefix length.
struct DesignMetrics {
    double fisher = 0.0;
    double mutual_info = 0.0;
    double entropy = 0.0;
    double amgm_slack = 0.0;
};

struct MemberMetrics {
    double fidelity = 0.0;
    double hs_distance = 0.0;
    double gap = 0.0;
    bool converged = true;
};

DesignMetrics design_metrics(const DesignMatrix& prefix, double eps_rel) {
    const double eps = relative_regularization(prefix, eps_rel);
    const CovarianceInfo cov = covariance_inverse(prefix, eps);
    DesignMetrics m;
    m.fisher = fisher_info(cov);
    m.mutual_info = mutual_information(cov);
    m.entropy = eigen_entropy(cov);
    const double D = static_cast<double>(cov.spectrum.size());
    m.amgm_slack = D * std::log(cov.trace_reg() / D) - cov.log_det_reg();
    return m;
}

Stat summarize(const std::vector<double>& values) {
    Stat s;
    const double n = static_cast<double>(values.size());
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const Spin spin = Spin::from_value(cfg.j);
    const int d = spin.dim();
    const OperatorBasis basis = gell_mann_basis(d);
    const Operator jz = build_jz(spin);
    const double kappa = cfg.noise_spread();
    const std::vector<int> est_steps = estimation_steps(cfg.steps, cfg.stride);
    const std::size_t n_est = est_steps.size();

    std::vector<Dynamics> dynamics;
    for (double lam : cfg.lambdas) {
        Dynamics dyn{"kicked_top", lam, {}, {}};
        dyn.series.push_back(heisenberg_series(build_floquet({spin, cfg.alpha, lam}), jz, cfg.steps));
        dynamics.push_back(std::move(dyn));
    }
    if (cfg.include_coe) {
        Dynamics dyn{"coe", std::nullopt, {}, {}};
        for (int c = 0; c < cfg.coe_draws; ++c) {
            SeededRng rng(cfg.seed, stream_id(StreamPurpose::Unitary, static_cast<std::uint64_t>(c)));
            dyn.series.push_back(heisenberg_series(coe_unitary(d, rng), jz, cfg.steps));
        }
        dynamics.push_back(std::move(dyn));
    }
    for (Dynamics& dyn : dynamics) {
        for (const auto& s : dyn.series) dyn.designs.push_back(design_matrix(s, basis));
    }

    // design metrics: [dynamics][draw][step]
    std::vector<std::vector<std::vector<DesignMetrics>>> dmetrics(dynamics.size());
    for (std::size_t k = 0; k < dynamics.size(); ++k) {
        for (const DesignMatrix& design : dynamics[k].designs) {
            std::vector<DesignMetrics> per_step;
            per_step.reserve(n_est);
            for (int n : est_steps) per_step.push_back(design_metrics(design.topRows(n), cfg.eps_rel));
            dmetrics[k].push_back(std::move(per_step));
        }
    }

    // Haar states are shared by all dynamics so curves are compared on identical inputs.
    const auto members = static_cast<std::size_t>(cfg.ensemble);
    std::vector<StateVector> states(members);
    std::vector<Operator> rho0s(members);
    std::vector<BlochVector> bloch0s(members);
    for (std::size_t i = 0; i < members; ++i) {
        SeededRng rng(cfg.seed, stream_id(StreamPurpose::State, i));
        states[i] = haar_pure_state(d, rng);
        rho0s[i] = states[i] * states[i].adjoint();
        bloch0s[i] = bloch_from_density(rho0s[i], basis);
    }

    SolverOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.rel_obj_tol = cfg.tol;
    opts.eps = cfg.eps_rel;

    // member metrics: [dynamics * members + member][step]
    std::vector<std::vector<MemberMetrics>> mmetrics(dynamics.size() * members);
    parallel_for(mmetrics.size(), cfg.threads, [&](std::size_t task) {
        const std::size_t k = task / members;
        const std::size_t i = task % members;
        const std::size_t draw = i % dynamics[k].series.size();
        const auto& series = dynamics[k].series[draw];
        const DesignMatrix& design = dynamics[k].designs[draw];
        SeededRng noise(cfg.seed, stream_id(StreamPurpose::Noise, i));
        const Record record = simulate_record(rho0s[i], series, kappa, noise);

        std::vector<MemberMetrics> out;
        out.reserve(n_est);
        std::optional<BlochVector> previous;
        for (int n : est_steps) {
            const DesignMatrix prefix = design.topRows(n);
            const Record rec{record.values.head(n), kappa};
            const ConstrainedResult est = constrained_estimate(prefix, rec, basis, opts, previous);
            MemberMetrics m;
            m.fidelity = fidelity(states[i], est.rho);
            m.hs_distance = hs_distance(rho0s[i], est.rho);
            m.gap = est.residual - residual(prefix, rec, bloch0s[i]);
            m.converged = est.converged;
            out.push_back(m);
            previous = est.bloch;
        }
        mmetrics[task] = std::move(out);
    });

    ResultsTable table;
    for (std::size_t k = 0; k < dynamics.size(); ++k) {
        for (std::size_t s = 0; s < n_est; ++s) {
            ResultsRow row;
            row.dynamics = dynamics[k].label;
            row.lambda = dynamics[k].lambda;
            row.step = est_steps[s];
            std::vector<double> fid, hs, fisher, mi, ent;
            double gap = -std::numeric_limits<double>::infinity();
            double slack = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < members; ++i) {
                const MemberMetrics& m = mmetrics[k * members + i][s];
                const DesignMetrics& dm = dmetrics[k][i % dmetrics[k].size()][s];
                fid.push_back(m.fidelity);
                hs.push_back(m.hs_distance);
                fisher.push_back(dm.fisher);
                mi.push_back(dm.mutual_info);
                ent.push_back(dm.entropy);
                gap = std::max(gap, m.gap);
                slack = std::min(slack, dm.amgm_slack);
                if (!m.converged) ++row.unconverged;
            }
            row.fidelity = summarize(fid);
            row.hs_distance = summarize(hs);
            row.fisher = summarize(fisher);
            row.mutual_info = summarize(mi);
            row.entropy = summarize(ent);
            row.max_optimality_gap = gap;
            row.min_amgm_slack = slack;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::string csv_header() {
    return "dynamics,lambda,step,fidelity_mean,fidelity_se,fisher_mean,fisher_se,mutinfo_mean,"
           "mutinfo_se,entropy_mean,entropy_se,hs_mean,hs_se";
}

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json stat_json(const Stat& s) { return {{"mean", s.mean}, {"se", s.se}}; }

Stat stat_from(const nlohmann::json& j) { return {j.at("mean").get<double>(), j.at("se").get<double>()}; }

}  // namespace

void emit_results(const ResultsTable& table, std::ostream& out, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << csv_header() << '\n';
        for (const ResultsRow& r : table.rows) {
            out << r.dynamics << ',' << (r.lambda ? fmt12(*r.lambda) : std::string()) << ',' << r.step;
            for (const Stat* s : {&r.fidelity, &r.fisher, &r.mutual_info, &r.entropy, &r.hs_distance}) {
                out << ',' << fmt12(s->mean) << ',' << fmt12(s->se);
            }
            out << '\n';
        }
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const ResultsRow& r : table.rows) {
        rows.push_back({{"dynamics", r.dynamics},
                        {"lambda", r.lambda ? nlohmann::json(*r.lambda) : nlohmann::json(nullptr)},
                        {"step", r.step},
                        {"fidelity", stat_json(r.fidelity)},
                        {"fisher", stat_json(r.fisher)},
                        {"mutinfo", stat_json(r.mutual_info)},
                        {"entropy", stat_json(r.entropy)},
                        {"hs", stat_json(r.hs_distance)},
                        {"unconverged", r.unconverged},
                        {"max_optimality_gap", r.max_optimality_gap},
                        {"min_amgm_slack", r.min_amgm_slack}});
    }
    out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

void emit_results(const ResultsTable& table, const std::string& path, OutputFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    emit_results(table, out, format);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

ResultsTable results_from_json(const std::string& text) {
    ResultsTable table;
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        for (const auto& jr : doc.at("rows")) {
            ResultsRow r;
            r.dynamics = jr.at("dynamics").get<std::string>();
            if (!jr.at("lambda").is_null()) r.lambda = jr.at("lambda").get<double>();
            r.step = jr.at("step").get<int>();
            r.fidelity = stat_from(jr.at("fidelity"));
            r.fisher = stat_from(jr.at("fisher"));
            r.mutual_info = stat_from(jr.at("mutinfo"));
            r.entropy = stat_from(jr.at("entropy"));
            r.hs_distance = stat_from(jr.at("hs"));
            r.unconverged = jr.at("unconverged").get<int>();
            r.max_optimality_gap = jr.at("max_optimality_gap").get<double>();
            r.min_amgm_slack = jr.at("min_amgm_slack").get<double>();
            table.rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed results JSON: ") + e.what());
    }
    return table;
}

}  // namespace chaostomo
