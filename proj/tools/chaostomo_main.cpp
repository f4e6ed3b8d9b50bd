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

// chaostomo command-line driver. Uses only the C API.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaostomo/chaostomo.h"

namespace {

constexpr const char* kUsage =
    "usage: chaostomo <command> [options]\n"
    "\n"
    "commands:\n"
    "  run      ensemble tomography sweep over chaoticity values (see run --help)\n"
    "  design   dump the kicked-top design matrix as CSV\n"
    "  record   dump one simulated measurement record as CSV\n"
    "  version  print the library version\n";

constexpr const char* kRunHelp =
    "usage: chaostomo run [--config FILE] [--j X] [--alpha X] [--lambda L1,L2,...]\n"
    "                     [--coe|--no-coe] [--coe-draws N] [--steps N] [--ensemble N]\n"
    "                     [--kappa X] [--reg-eps X] [--stride N] [--seed N]\n"
    "                     [--max-iters N] [--tol X] [--threads N]\n"
    "                     [--out PATH] [--format csv|json]\n";

int report(ct_status status) {
    std::fprintf(stderr, "chaostomo: %s: %s\n", ct_status_name(status), ct_last_error());
    return status == CT_ERR_USAGE ? 2 : 1;
}

int cmd_run(int argc, const char* const* argv) {
    for (int i = 0; i < argc; ++i) {
        if (std::strcmp(argv[i], "--help") == 0 || std::strcmp(argv[i], "-h") == 0) {
            std::fputs(kRunHelp, stdout);
            return 0;
        }
    }
    ct_config* cfg = nullptr;
    if (ct_status s = ct_config_parse(argc, argv, &cfg); s != CT_OK) {
        int rc = report(s);
        std::fputs(kRunHelp, stderr);
        return rc;
    }
    ct_results* results = nullptr;
    ct_status s = ct_run(cfg, &results);
    if (s == CT_OK) {
        const std::string path = ct_config_output_path(cfg);
        s = path.empty() ? ct_results_print(results, ct_config_format(cfg))
                         : ct_results_write(results, path.c_str(), ct_config_format(cfg));
    }
    if (s == CT_OK) {
        size_t flagged = 0;
        for (size_t i = 0; i < ct_results_row_count(results); ++i) {
            ct_row row;
            if (ct_results_row(results, i, &row) == CT_OK && row.unconverged > 0) ++flagged;
        }
        if (flagged > 0) {
            std::fprintf(stderr, "chaostomo: warning: %zu rows contain unconverged estimates\n", flagged);
        }
    }
    ct_results_free(results);
    ct_config_free(cfg);
    return s == CT_OK ? 0 : report(s);
}

int cmd_dump(const std::string& which, int argc, const char* const* argv) {
    CLI::App app{"chaostomo " + which};
    double j = 10.0, alpha = 1.4, lambda = 7.0, kappa = 0.1;
    int steps = 100;
    std::uint64_t seed = 1, member = 0;
    std::string out;
    app.add_option("--j", j, "spin quantum number");
    app.add_option("--alpha", alpha, "rotation angle");
    app.add_option("--lambda", lambda, "chaoticity");
    app.add_option("--steps", steps, "record length");
    app.add_option("--out", out, "output CSV path")->required();
    if (which == "record") {
        app.add_option("--kappa", kappa, "noise spread");
        app.add_option("--seed", seed, "master seed");
        app.add_option("--member", member, "ensemble member index");
    }
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    const ct_status s = which == "design"
                            ? ct_write_design_csv(j, alpha, lambda, steps, out.c_str())
                            : ct_write_record_csv(j, alpha, lambda, steps, kappa, seed, member, out.c_str());
    return s == CT_OK ? 0 : report(s);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 2;
    }
    const std::string cmd = argv[1];
    if (cmd == "run") return cmd_run(argc - 2, argv + 2);
    if (cmd == "design" || cmd == "record") return cmd_dump(cmd, argc - 2, argv + 2);
    if (cmd == "version" || cmd == "--version") {
        std::printf("chaostomo %s\n", ct_version());
        return 0;
    }
    if (cmd == "help" || cmd == "--help" || cmd == "-h") {
        std::fputs(kUsage, stdout);
        return 0;
    }
    std::fprintf(stderr, "chaostomo: unknown command '%s'\n", cmd.c_str());
    std::fputs(kUsage, stderr);
    return 2;
}
