// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rvqc/commands.hpp"

namespace {

rvqc::ExperimentConfig load(const std::string& path) {
    if (path.empty()) {
        auto cfg = rvqc::ExperimentConfig{};
        cfg.validate();
        return cfg;
    }
    std::ifstream in(path);
    if (!in) throw rvqc::ConfigError("cannot open config file '" + path + "'");
    return rvqc::parse_config(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Field-mediated entangler toolkit: couplings, fidelity bound, pair-gate transpiler, QFT training"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    app.add_option("--config", config_path, "configuration file (INI sections, see docs/config_schema.md)");
    app.add_option("--out", out_dir, "output directory (overrides [experiment] output_dir)");
    app.add_option("--seed", seed, "random seed (overrides [experiment] seed)");
    app.add_option("--runs", runs, "number of training runs (overrides [train] num_runs)");

    auto* couplings = app.add_subcommand("couplings", "write delta.csv, wightman.csv and a coupling summary");
    auto* bound = app.add_subcommand("bound", "evaluate the channel fidelity bound and sample exact fidelities");
    auto* transpile = app.add_subcommand("transpile", "build and verify a pair-gate plan");
    auto* train = app.add_subcommand("train", "train the layered ansatz towards the QFT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rvqc::exit_config;
    }

    try {
        auto cfg = load(config_path);
        if (out_dir) cfg.output_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        if (runs) cfg.train.num_runs = *runs;
        cfg.validate();
        if (couplings->parsed()) return rvqc::cmd_couplings(cfg, std::cout);
        if (bound->parsed()) return rvqc::cmd_bound(cfg, std::cout);
        if (transpile->parsed()) return rvqc::cmd_transpile(cfg, std::cout);
        if (train->parsed()) return rvqc::cmd_train(cfg, std::cout);
    } catch (const rvqc::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return rvqc::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rvqc::exit_failure;
    }
    return rvqc::exit_failure;
}
