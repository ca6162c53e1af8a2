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

// Experiment configuration, execution and dataset emission for the CLI.
//
// Configuration is a JSON object (comments allowed). Every key is optional
// except that `kind` must be known, either from the document or from the
// caller. Unknown keys, and keys that do not apply to the kind, are rejected.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qcollide/errors.hpp"
#include "qcollide/model.hpp"
#include "qcollide/nonmarkov.hpp"
#include "qcollide/parallel.hpp"
#include "qcollide/transport.hpp"
#include "qcollide/validation.hpp"

namespace qcollide {

inline constexpr std::string_view kVersion = "1.0.0";

enum class ExperimentKind { NonMarkovSweep, TransportSweep, TransportEvolve, Validate };
enum class OutputFormat { Csv, JsonLines };

inline std::string_view kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::NonMarkovSweep:
            return "nonmarkov-sweep";
        case ExperimentKind::TransportSweep:
            return "transport-sweep";
        case ExperimentKind::TransportEvolve:
            return "transport-evolve";
        case ExperimentKind::Validate:
            return "validate";
    }
    return "unknown";
}

inline std::optional<ExperimentKind> parse_kind(std::string_view s) {
    if (s == "nonmarkov-sweep" || s == "nonmarkov") return ExperimentKind::NonMarkovSweep;
    if (s == "transport-sweep") return ExperimentKind::TransportSweep;
    if (s == "transport-evolve") return ExperimentKind::TransportEvolve;
    if (s == "validate") return ExperimentKind::Validate;
    return std::nullopt;
}

inline std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "jsonl" || s == "json-lines") return OutputFormat::JsonLines;
    return std::nullopt;
}

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Validate;
    ModelConfig model_config;
    NonMarkovModel nonmarkov_model = NonMarkovModel::OneByOne;
    std::vector<double> eta_grid;
    std::vector<double> omega_grid;
    std::size_t random_pairs = 1000;
    std::optional<std::string> output_path;
    OutputFormat output_format = OutputFormat::Csv;
    unsigned threads = 0;
    bool integrity_checks = true;

    RunOptions run_options() const { return {threads, integrity_checks}; }
};

/// Defaults for each kind before any key is applied.
inline ExperimentSpec default_spec(ExperimentKind kind) {
    ExperimentSpec s;
    s.kind = kind;
    switch (kind) {
        case ExperimentKind::NonMarkovSweep:
            s.model_config = one_by_one_config(kHalfPi, 0.0);
            s.model_config.steps = 20;
            s.omega_grid = uniform_grid(0.0, 1.0, 11);
            break;
        case ExperimentKind::TransportSweep:
            s.model_config = transport_defaults();
            s.model_config.steps = 2;
            s.eta_grid = default_eta_grid();
            s.omega_grid = default_omega_grid();
            break;
        case ExperimentKind::TransportEvolve:
            s.model_config = transport_defaults();
            s.model_config.eta = 0.4;
            s.model_config.steps = 100;
            s.omega_grid = default_omega_grid();
            break;
        case ExperimentKind::Validate:
            break;
    }
    return s;
}

/// Checks every parameter against its domain; nothing runs until this passes.
inline void validate_spec(const ExperimentSpec& spec) {
    if (spec.kind == ExperimentKind::Validate) return;
    spec.model_config.validate();
    for (double eta : spec.eta_grid) ModelConfig::validate_eta(eta);
    for (double omega : spec.omega_grid) ModelConfig::validate_omega(omega);
    if (spec.omega_grid.empty()) throw ConfigError("omega_grid", "omega_grid must not be empty");
    if (spec.kind == ExperimentKind::TransportSweep && spec.eta_grid.empty()) {
        throw ConfigError("eta_grid", "eta_grid must not be empty");
    }
    if (spec.kind != ExperimentKind::NonMarkovSweep && spec.model_config.n_sites < 2) {
        throw ConfigError("n_sites", "transport experiments need n_sites >= 2");
    }
    if (spec.model_config.n_sites > 8) {
        throw ConfigError::out_of_range("n_sites", static_cast<double>(spec.model_config.n_sites), "[1, 8]");
    }
    if (spec.kind == ExperimentKind::NonMarkovSweep && spec.model_config.steps < 1) {
        throw ConfigError("steps", "steps must be >= 1");
    }
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline double number_at(const nlohmann::json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError(key, key + " must be a number");
    return v.get<double>();
}

inline std::uint64_t unsigned_at(const nlohmann::json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(key, key + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::vector<double> numbers_at(const nlohmann::json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ConfigError(key, key + " must be a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(key, key + " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

/// A scalar broadcasts over every bond; an array is taken as-is.
inline std::vector<double> couplings_at(const nlohmann::json& doc, const std::string& key, std::size_t n_sites) {
    const auto& v = doc.at(key);
    if (v.is_number()) return std::vector<double>(n_sites > 0 ? n_sites - 1 : 0, v.get<double>());
    return numbers_at(doc, key);
}

inline std::set<std::string> allowed_keys(ExperimentKind kind) {
    std::set<std::string> keys{"kind"};
    if (kind == ExperimentKind::Validate) return keys;
    keys.insert({"omega_grid", "steps", "seed", "output", "format", "threads", "integrity_checks"});
    switch (kind) {
        case ExperimentKind::NonMarkovSweep:
            keys.insert({"model", "eta", "random_pairs", "j_chain", "j_res", "dt"});
            break;
        case ExperimentKind::TransportSweep:
            keys.insert({"n_sites", "j_chain", "j_res", "dt", "eta_grid", "eta_points"});
            break;
        case ExperimentKind::TransportEvolve:
            keys.insert({"n_sites", "j_chain", "j_res", "dt", "eta"});
            break;
        case ExperimentKind::Validate:
            break;
    }
    return keys;
}

}  // namespace detail

/// Parses and fully validates a configuration document. `kind_hint` supplies
/// the kind when the document has none and must agree with it otherwise.
inline ExperimentSpec parse_config(std::string_view text, std::optional<ExperimentKind> kind_hint = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = detail::line_and_column(text, e.byte);
        throw ParseError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + e.what(),
                         line, column);
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object", 1, 1);

    std::optional<ExperimentKind> kind = kind_hint;
    if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) throw ConfigError("kind", "kind must be a string");
        const auto parsed = parse_kind(doc["kind"].get<std::string>());
        if (!parsed) throw ConfigError("kind", "unknown kind '" + doc["kind"].get<std::string>() + "'");
        if (kind_hint && *kind_hint != *parsed) {
            throw ConfigError("kind", "config kind '" + std::string(kind_name(*parsed)) +
                                          "' does not match requested '" + std::string(kind_name(*kind_hint)) + "'");
        }
        kind = parsed;
    }
    if (!kind) throw ConfigError("kind", "experiment kind is not specified");

    const auto allowed = detail::allowed_keys(*kind);
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(key, "unknown key '" + key + "' for kind " + std::string(kind_name(*kind)));
        }
    }

    ExperimentSpec spec = default_spec(*kind);
    ModelConfig& mc = spec.model_config;

    if (doc.contains("model")) {
        const auto& v = doc["model"];
        const std::string m = v.is_string() ? v.get<std::string>() : "";
        if (m == "1x1") {
            spec.nonmarkov_model = NonMarkovModel::OneByOne;
        } else if (m == "3x3") {
            spec.nonmarkov_model = NonMarkovModel::ThreeByThree;
            const double eta = mc.eta;
            const std::size_t steps = mc.steps;
            mc = three_by_three_config(eta, 0.0);
            mc.steps = steps;
        } else {
            throw ConfigError("model", "model must be \"1x1\" or \"3x3\"");
        }
    }
    if (doc.contains("n_sites")) mc.n_sites = detail::unsigned_at(doc, "n_sites");
    if (doc.contains("n_sites") || doc.contains("j_chain") || doc.contains("j_res")) {
        if (spec.kind == ExperimentKind::NonMarkovSweep && spec.nonmarkov_model == NonMarkovModel::OneByOne) {
            const std::string key = doc.contains("j_chain") ? "j_chain" : "j_res";
            throw ConfigError(key, key + " does not apply to the 1x1 model");
        }
        // Re-broadcast defaults when only n_sites changed.
        const double jc = mc.j_chain.empty() ? 10.0 : mc.j_chain.front();
        const double jr = mc.j_res.empty() ? 1.0 : mc.j_res.front();
        mc.j_chain.assign(mc.n_sites > 0 ? mc.n_sites - 1 : 0, jc);
        mc.j_res.assign(mc.n_sites > 0 ? mc.n_sites - 1 : 0, jr);
    }
    if (doc.contains("j_chain")) mc.j_chain = detail::couplings_at(doc, "j_chain", mc.n_sites);
    if (doc.contains("j_res")) mc.j_res = detail::couplings_at(doc, "j_res", mc.n_sites);
    if (doc.contains("dt")) mc.dt = detail::number_at(doc, "dt");
    if (doc.contains("eta")) mc.eta = detail::number_at(doc, "eta");
    if (doc.contains("steps")) mc.steps = detail::unsigned_at(doc, "steps");
    if (doc.contains("seed")) mc.seed = detail::unsigned_at(doc, "seed");
    if (doc.contains("random_pairs")) spec.random_pairs = detail::unsigned_at(doc, "random_pairs");
    if (doc.contains("omega_grid")) spec.omega_grid = detail::numbers_at(doc, "omega_grid");
    if (doc.contains("eta_grid") && doc.contains("eta_points")) {
        throw ConfigError("eta_points", "eta_grid and eta_points are mutually exclusive");
    }
    if (doc.contains("eta_grid")) spec.eta_grid = detail::numbers_at(doc, "eta_grid");
    if (doc.contains("eta_points")) {
        spec.eta_grid = uniform_grid(0.0, kHalfPi, detail::unsigned_at(doc, "eta_points"));
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw ConfigError("output", "output must be a path string");
        spec.output_path = doc["output"].get<std::string>();
    }
    if (doc.contains("format")) {
        const auto f = doc["format"].is_string() ? parse_format(doc["format"].get<std::string>()) : std::nullopt;
        if (!f) throw ConfigError("format", "format must be \"csv\" or \"jsonl\"");
        spec.output_format = *f;
    }
    if (doc.contains("threads")) spec.threads = static_cast<unsigned>(detail::unsigned_at(doc, "threads"));
    if (doc.contains("integrity_checks")) {
        if (!doc["integrity_checks"].is_boolean()) throw ConfigError("integrity_checks", "integrity_checks must be a boolean");
        spec.integrity_checks = doc["integrity_checks"].get<bool>();
    }

    validate_spec(spec);
    return spec;
}

// ---------------------------------------------------------------------------
// Datasets

using Cell = std::variant<std::monostate, std::string, double, std::uint64_t>;

struct Dataset {
    std::string schema;
    nlohmann::ordered_json manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// The parameters that determine the dataset, in the configuration-file
/// vocabulary, so the manifest can be fed back to `--config`.
inline nlohmann::ordered_json spec_parameters(const ExperimentSpec& spec) {
    const ModelConfig& mc = spec.model_config;
    nlohmann::ordered_json p;
    p["kind"] = kind_name(spec.kind);
    switch (spec.kind) {
        case ExperimentKind::NonMarkovSweep:
            p["model"] = model_name(spec.nonmarkov_model);
            p["eta"] = mc.eta;
            p["omega_grid"] = spec.omega_grid;
            p["steps"] = mc.steps;
            if (spec.nonmarkov_model == NonMarkovModel::OneByOne) {
                p["random_pairs"] = spec.random_pairs;
            } else {
                p["j_chain"] = mc.j_chain;
                p["j_res"] = mc.j_res;
                p["dt"] = mc.dt;
            }
            p["seed"] = mc.seed;
            break;
        case ExperimentKind::TransportSweep:
        case ExperimentKind::TransportEvolve:
            p["n_sites"] = mc.n_sites;
            p["j_chain"] = mc.j_chain;
            p["j_res"] = mc.j_res;
            p["dt"] = mc.dt;
            if (spec.kind == ExperimentKind::TransportSweep) {
                p["eta_grid"] = spec.eta_grid;
            } else {
                p["eta"] = mc.eta;
            }
            p["omega_grid"] = spec.omega_grid;
            p["steps"] = mc.steps;
            p["seed"] = mc.seed;
            break;
        case ExperimentKind::Validate:
            break;
    }
    p["integrity_checks"] = spec.integrity_checks;
    return p;
}

inline Dataset compute_dataset(const ExperimentSpec& spec) {
    validate_spec(spec);
    const ModelConfig& mc = spec.model_config;
    const RunOptions opts = spec.run_options();
    Dataset ds;
    ds.manifest["tool"] = "qcollide";
    ds.manifest["version"] = kVersion;

    switch (spec.kind) {
        case ExperimentKind::NonMarkovSweep: {
            ds.schema = "qcollide.nonmarkov.v1";
            ds.columns = {"model", "eta", "omega", "steps", "n_value", "pair_descriptor", "random_pairs_max"};
            std::vector<NonMarkovResult> results;
            if (spec.nonmarkov_model == NonMarkovModel::OneByOne) {
                results = sweep_omega(NonMarkovModel::OneByOne, mc.eta, spec.omega_grid, mc.steps, spec.random_pairs,
                                      mc.seed, opts);
            } else {
                results.resize(spec.omega_grid.size());
                parallel_for_index(spec.omega_grid.size(), opts.threads, [&](std::size_t i) {
                    results[i] = measure_3x3(mc.eta, spec.omega_grid[i], mc.steps, opts, mc);
                });
            }
            for (const auto& r : results) {
                Cell random_max;
                if (r.random_pairs_max) random_max = *r.random_pairs_max;
                ds.rows.push_back({std::string(model_name(r.model)), r.eta, r.omega,
                                   static_cast<std::uint64_t>(r.steps), r.n_value, r.pair_descriptor, random_max});
            }
            break;
        }
        case ExperimentKind::TransportSweep: {
            ds.schema = "qcollide.transport.v1";
            ds.columns = {"eta", "omega", "iteration", "coherence_abs", "coherence_real", "coherence_imag"};
            for (const auto& p : sweep_eta_omega(spec.eta_grid, spec.omega_grid, mc.steps, mc, opts)) {
                ds.rows.push_back({p.eta, p.omega, static_cast<std::uint64_t>(p.iterations), p.coherence_abs,
                                   p.coherence_value.real(), p.coherence_value.imag()});
            }
            break;
        }
        case ExperimentKind::TransportEvolve: {
            ds.schema = "qcollide.transport.v1";
            ds.columns = {"eta", "omega", "iteration", "coherence_abs", "coherence_real", "coherence_imag"};
            for (const auto& p : evolve_series(mc.eta, spec.omega_grid, mc.steps, mc, opts)) {
                ds.rows.push_back({p.eta, p.omega, static_cast<std::uint64_t>(p.iterations), p.coherence_abs,
                                   p.coherence_value.real(), p.coherence_value.imag()});
            }
            break;
        }
        case ExperimentKind::Validate:
            throw PreconditionError("compute_dataset: validate produces a report, not a dataset");
    }
    ds.manifest["schema"] = ds.schema;
    ds.manifest["config"] = spec_parameters(spec);
    return ds;
}

namespace detail {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                return std::to_string(v);
            } else {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string q = "\"";
                for (char ch : v) {
                    if (ch == '"') q += '"';
                    q += ch;
                }
                return q + "\"";
            }
        },
        c);
}

inline std::string json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "null";
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : "null";
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                return std::to_string(v);
            } else {
                return nlohmann::json(v).dump();
            }
        },
        c);
}

}  // namespace detail

/// CSV: `#` manifest lines, a header row, then one row per record.
/// JSON lines: a manifest object, then one object per record.
inline std::string render_dataset(const Dataset& ds, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "# qcollide " << kVersion << '\n';
        os << "# schema: " << ds.schema << '\n';
        os << "# manifest: " << ds.manifest.dump() << '\n';
        for (std::size_t i = 0; i < ds.columns.size(); ++i) os << (i ? "," : "") << ds.columns[i];
        os << '\n';
        for (const auto& row : ds.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_cell(row[i]);
            os << '\n';
        }
    } else {
        os << nlohmann::ordered_json{{"manifest", ds.manifest}}.dump() << '\n';
        for (const auto& row : ds.rows) {
            os << '{';
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << nlohmann::json(ds.columns[i]).dump() << ':' << detail::json_cell(row[i]);
            }
            os << "}\n";
        }
    }
    return os.str();
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw std::system_error(errno, std::generic_category(), "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::system_error(ec, "cannot rename " + tmp.string() + " to " + path.string());
    }
}

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfig = 2,
    kExitIntegrity = 3,
    kExitIo = 4,
};

/// Runs a validated spec. The dataset goes to spec.output_path when set and to
/// `out` otherwise; diagnostics go to `err`.
inline int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.kind == ExperimentKind::Validate) {
            const auto checks = validate();
            print_report(checks, out);
            return all_passed(checks) ? kExitOk : kExitCheckFailed;
        }
        const std::string text = render_dataset(compute_dataset(spec), spec.output_format);
        if (spec.output_path) {
            write_file_atomically(*spec.output_path, text);
        } else {
            out << text;
        }
        return kExitOk;
    } catch (const NumericalIntegrityError& e) {
        err << "error: " << e.what() << " (phase: " << e.phase() << ")\n";
        return kExitIntegrity;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::system_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace qcollide
