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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chaostomo/estimator.hpp"
#include "chaostomo/metrics.hpp"

namespace chaostomo {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    double j = 10.0;
    double alpha = 1.4;
    std::vector<double> lambdas{0.5, 2.0, 7.0};
    bool include_coe = true;
    /// COE draws; member i uses draw i mod coe_draws.
    int coe_draws = 1;
    int steps = 100;
    int ensemble = 100;
    /// Unset means j / 100.
    std::optional<double> kappa;
    double eps_rel = 1e-6;
    int stride = 1;
    std::uint64_t seed = 1;
    int max_iters = 20000;
    double tol = 1e-10;
    /// 0 means one worker per hardware thread.
    int threads = 0;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    double noise_spread() const { return kappa.value_or(j / 100.0); }
    /// Throws UsageError on out-of-range values.
    void validate() const;
};

/// Mean and standard error over the ensemble.
struct Stat {
    double mean = 0.0;
    double se = 0.0;
    bool operator==(const Stat&) const = default;
};

struct ResultsRow {
    std::string dynamics;  // "kicked_top" or "coe"
    std::optional<double> lambda;
    int step = 0;
    Stat fidelity;
    Stat fisher;
    Stat mutual_info;
    Stat entropy;
    Stat hs_distance;

    // Diagnostics; written to JSON only.
    int unconverged = 0;
    /// max over members of residual(estimate) - residual(true state).
    double max_optimality_gap = 0.0;
    /// min over members of D log(Tr(cinv_reg)/D) - log det(cinv_reg).
    double min_amgm_slack = 0.0;

    bool operator==(const ResultsRow&) const = default;
};

struct ResultsTable {
    std::vector<ResultsRow> rows;
    bool operator==(const ResultsTable&) const = default;
};

/// Record lengths at which the estimator runs: steps, steps - stride, ...
/// down to >= 1, ascending. Always ceil(steps / stride) entries.
std::vector<int> estimation_steps(int steps, int stride);

ResultsTable run_experiment(const ExperimentConfig& cfg);

void emit_results(const ResultsTable& table, std::ostream& out, OutputFormat format);
/// Throws IoError naming the path on failure.
void emit_results(const ResultsTable& table, const std::string& path, OutputFormat format);

ResultsTable results_from_json(const std::string& text);

/// Parses `run` arguments (without the program or subcommand name).
/// Precedence: flags > --config JSON file > defaults. Throws UsageError.
ExperimentConfig parse_config(const std::vector<std::string>& args);

std::string csv_header();

}  // namespace chaostomo
