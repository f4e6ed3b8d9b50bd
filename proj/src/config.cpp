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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaostomo/errors.hpp"
#include "chaostomo/experiment.hpp"

namespace chaostomo {

namespace {

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw UsageError("unknown format '" + s + "' (expected csv or json)");
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
        for (const auto& [key, value] : doc.items()) {
            if (key == "j") cfg.j = value.get<double>();
            else if (key == "alpha") cfg.alpha = value.get<double>();
            else if (key == "lambda") cfg.lambdas = value.get<std::vector<double>>();
            else if (key == "coe") cfg.include_coe = value.get<bool>();
            else if (key == "coe_draws") cfg.coe_draws = value.get<int>();
            else if (key == "steps") cfg.steps = value.get<int>();
            else if (key == "ensemble") cfg.ensemble = value.get<int>();
            else if (key == "kappa") cfg.kappa = value.get<double>();
            else if (key == "reg_eps") cfg.eps_rel = value.get<double>();
            else if (key == "stride") cfg.stride = value.get<int>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "max_iters") cfg.max_iters = value.get<int>();
            else if (key == "tol") cfg.tol = value.get<double>();
            else if (key == "threads") cfg.threads = value.get<int>();
            else if (key == "out") cfg.output_path = value.get<std::string>();
            else if (key == "format") cfg.format = parse_format(value.get<std::string>());
            else throw UsageError("unknown key '" + key + "' in config file '" + path + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed config file '" + path + "': " + e.what());
    }
}

std::vector<double> parse_lambda_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError("malformed --lambda value '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw UsageError("--lambda needs at least one value");
    return values;
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"chaostomo run"};
    app.allow_extras(false);

    std::string config_path;
    double j = 0, alpha = 0, kappa = 0, reg_eps = 0, tol = 0;
    std::string lambda_list;
    bool coe = true;
    int coe_draws = 0, steps = 0, ensemble = 0, stride = 0, max_iters = 0, threads = 0;
    std::uint64_t seed = 0;
    std::string out, format;

    app.add_option("--config", config_path, "JSON config file");
    auto* o_j = app.add_option("--j", j, "spin quantum number");
    auto* o_alpha = app.add_option("--alpha", alpha, "rotation angle");
    auto* o_lambda = app.add_option("--lambda", lambda_list, "comma-separated chaoticity values");
    auto* o_coe = app.add_flag("--coe,!--no-coe", coe, "include the COE baseline");
    auto* o_draws = app.add_option("--coe-draws", coe_draws, "number of COE unitaries");
    auto* o_steps = app.add_option("--steps", steps, "record length");
    auto* o_ens = app.add_option("--ensemble", ensemble, "number of Haar states");
    auto* o_kappa = app.add_option("--kappa", kappa, "noise spread sigma/N_A");
    auto* o_eps = app.add_option("--reg-eps", reg_eps, "regularization, fraction of mean eigenvalue");
    auto* o_stride = app.add_option("--stride", stride, "estimate every N steps");
    auto* o_seed = app.add_option("--seed", seed, "master seed");
    auto* o_iters = app.add_option("--max-iters", max_iters, "solver iteration cap");
    auto* o_tol = app.add_option("--tol", tol, "relative objective tolerance");
    auto* o_threads = app.add_option("--threads", threads, "worker threads (0 = all)");
    auto* o_out = app.add_option("--out", out, "output path");
    auto* o_format = app.add_option("--format", format, "csv or json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (o_j->count()) cfg.j = j;
    if (o_alpha->count()) cfg.alpha = alpha;
    if (o_lambda->count()) cfg.lambdas = parse_lambda_list(lambda_list);
    if (o_coe->count()) cfg.include_coe = coe;
    if (o_draws->count()) cfg.coe_draws = coe_draws;
    if (o_steps->count()) cfg.steps = steps;
    if (o_ens->count()) cfg.ensemble = ensemble;
    if (o_kappa->count()) cfg.kappa = kappa;
    if (o_eps->count()) cfg.eps_rel = reg_eps;
    if (o_stride->count()) cfg.stride = stride;
    if (o_seed->count()) cfg.seed = seed;
    if (o_iters->count()) cfg.max_iters = max_iters;
    if (o_tol->count()) cfg.tol = tol;
    if (o_threads->count()) cfg.threads = threads;
    if (o_out->count()) cfg.output_path = out;
    if (o_format->count()) cfg.format = parse_format(format);
    cfg.validate();
    return cfg;
}

}  // namespace chaostomo
