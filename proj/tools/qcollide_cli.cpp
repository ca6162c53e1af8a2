// Copyright 2026 The qcollide Authors
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

// qcollide: run collision-model experiments and emit datasets.
//
//   qcollide nonmarkov        [--config f] [--out f] [--format csv|jsonl] ...
//   qcollide transport-sweep  ...
//   qcollide transport-evolve ...
//   qcollide validate

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qcollide/experiment.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    bool no_integrity_checks = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out_path, "output path (default: stdout)");
    cmd->add_option("--format", flags.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--seed", flags.seed, "RNG seed for random state pairs");
    cmd->add_option("--threads", flags.threads, "worker threads (default: hardware cores)");
    cmd->add_flag("--no-integrity-checks", flags.no_integrity_checks, "skip per-phase density-matrix checks");
}

int run(qcollide::ExperimentKind kind, const CommonFlags& flags) {
    using namespace qcollide;
    std::string text = "{}";
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot read " << flags.config_path << '\n';
            return kExitIo;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    ExperimentSpec spec;
    try {
        spec = parse_config(text, kind);
        if (!flags.out_path.empty()) spec.output_path = flags.out_path;
        if (!flags.format.empty()) spec.output_format = *parse_format(flags.format);
        if (flags.seed) spec.model_config.seed = *flags.seed;
        if (flags.threads) spec.threads = *flags.threads;
        if (flags.no_integrity_checks) spec.integrity_checks = false;
        validate_spec(spec);
    } catch (const ParseError& e) {
        std::cerr << "error: " << (flags.config_path.empty() ? "" : flags.config_path + ": ") << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return run_experiment(spec, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collision-model simulator with tunable non-Markovianity"};
    app.set_version_flag("--version", std::string(qcollide::kVersion));
    app.require_subcommand(1);

    CommonFlags nonmarkov_flags, sweep_flags, evolve_flags;
    auto* nonmarkov = app.add_subcommand("nonmarkov", "non-Markovianity measure as a function of omega");
    auto* sweep = app.add_subcommand("transport-sweep", "first-to-last coherence over an (eta, omega) grid");
    auto* evolve = app.add_subcommand("transport-evolve", "coherence time series at fixed eta");
    auto* validate = app.add_subcommand("validate", "run the closed-form self-checks");
    add_common_flags(nonmarkov, nonmarkov_flags);
    add_common_flags(sweep, sweep_flags);
    add_common_flags(evolve, evolve_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : qcollide::kExitConfig;
    }

    if (*nonmarkov) return run(qcollide::ExperimentKind::NonMarkovSweep, nonmarkov_flags);
    if (*sweep) return run(qcollide::ExperimentKind::TransportSweep, sweep_flags);
    if (*evolve) return run(qcollide::ExperimentKind::TransportEvolve, evolve_flags);
    if (*validate) return run(qcollide::ExperimentKind::Validate, CommonFlags{});
    return 0;
}
