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

// Experiment configuration: INI-style sections of typed keys. The schema is
// documented in docs/config_schema.md. Unknown sections and keys are errors.

#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/io.hpp"
#include "rvqc/train.hpp"
#include "rvqc/transpile.hpp"

namespace rvqc {

struct ConfigError : Error {
    using Error::Error;
};

struct LayoutConfig {
    std::string kind = "lattice";  // lattice | explicit
    int nx = 3;
    int ny = 2;
    double dx = 5.0;
    double dy = 3.0;
    std::string scale = "t_lambda2";  // none | t_lambda2: multiply coordinates by T lambda^2
    std::vector<Position> positions;

    bool operator==(const LayoutConfig&) const = default;
};

struct TrainOptions {
    int depth = 50;
    double learning_rate = 0.01;
    double tolerance = 0.004;
    int max_epochs = 30000;
    int num_runs = 20;
    int num_test_states = 64;
    int fidelity_every = 50;
    std::string normalization = "dimension";  // dimension | qubits
    int threads = 1;

    bool operator==(const TrainOptions&) const = default;
};

struct TranspileOptions {
    std::optional<QubitPair> pair;  // default (N-2, N-1)
    double margin = 0.1;
    std::string mode = "auto";  // auto | dense | symbolic
    std::optional<double> pair_delta;
    bool eliminate = false;

    bool operator==(const TranspileOptions&) const = default;
};

struct BoundOptions {
    int num_states = 200;
    int layers = 100;

    bool operator==(const BoundOptions&) const = default;
};

inline constexpr std::size_t max_layout_qubits = 4096;

struct ExperimentConfig {
    InteractionProfile profile{1e8, 1e-8, 1e-4, 7.0};
    LayoutConfig layout;
    TrainOptions train;
    TranspileOptions transpile;
    BoundOptions bound;
    std::uint64_t seed = 1;
    std::string output_dir = "out";

    bool operator==(const ExperimentConfig& o) const {
        auto same_profile = profile.T == o.profile.T && profile.sigma == o.profile.sigma &&
                            profile.lambda == o.profile.lambda && profile.t_center == o.profile.t_center;
        return same_profile && layout == o.layout && train == o.train && transpile == o.transpile &&
               bound == o.bound && seed == o.seed && output_dir == o.output_dir;
    }

    QubitLayout qubit_layout() const {
        const double s = layout.scale == "t_lambda2" ? profile.T * profile.lambda * profile.lambda : 1.0;
        QubitLayout out;
        if (layout.kind == "lattice") {
            out = rectangular_lattice(layout.nx, layout.ny, layout.dx, layout.dy);
        } else {
            out.positions = layout.positions;
        }
        for (auto& p : out.positions) {
            for (double& x : p) x *= s;
        }
        return out;
    }

    int num_qubits() const { return qubit_layout().size(); }

    LossNormalization normalization() const {
        return train.normalization == "qubits" ? LossNormalization::qubit_count : LossNormalization::hilbert_dimension;
    }

    TrainConfig train_config() const {
        TrainConfig c;
        c.layout = qubit_layout();
        c.num_qubits = c.layout.size();
        c.depth = train.depth;
        c.profile = profile;
        c.learning_rate = train.learning_rate;
        c.tolerance = train.tolerance;
        c.max_epochs = train.max_epochs;
        c.num_runs = train.num_runs;
        c.num_test_states = train.num_test_states;
        c.seed = seed;
        c.fidelity_every = train.fidelity_every;
        c.normalization = normalization();
        c.threads = train.threads;
        return c;
    }

    QubitPair transpile_pair() const {
        if (transpile.pair) return *transpile.pair;
        const int n = num_qubits();
        return {n - 2, n - 1};
    }

    /// Schema-level checks that do not depend on the subcommand.
    void validate() const {
        auto fail = [](const std::string& m) { throw ConfigError(m); };
        try {
            profile.validate();
        } catch (const InvalidArgument& e) {
            fail(std::string("[field] ") + e.what());
        }
        if (layout.kind != "lattice" && layout.kind != "explicit") fail("[layout] kind must be lattice or explicit");
        if (layout.scale != "none" && layout.scale != "t_lambda2") fail("[layout] scale must be none or t_lambda2");
        if (layout.kind == "lattice") {
            if (layout.nx < 1 || layout.ny < 1) fail("[layout] nx and ny must be >= 1");
            if (static_cast<std::size_t>(layout.nx) * static_cast<std::size_t>(layout.ny) > max_layout_qubits) {
                fail("[layout] at most 4096 qubits");
            }
        } else {
            if (layout.positions.empty()) fail("[layout] explicit layout needs positions");
            if (layout.positions.size() > max_layout_qubits) fail("[layout] at most 4096 qubits");
        }
        const auto lay = qubit_layout();
        if (layout.scale == "t_lambda2" && !(profile.T * profile.lambda * profile.lambda > 0.0)) {
            fail("[layout] scale = t_lambda2 needs lambda > 0");
        }
        try {
            lay.validate();
        } catch (const CoincidentPositions& e) {
            fail(std::string("[layout] ") + e.what());
        }
        if (train.depth < 1) fail("[train] depth must be >= 1");
        if (!(train.learning_rate > 0.0)) fail("[train] learning_rate must be positive");
        if (!(train.tolerance >= 0.0)) fail("[train] tolerance must be non-negative");
        if (train.max_epochs < 1) fail("[train] max_epochs must be >= 1");
        if (train.num_runs < 1) fail("[train] num_runs must be >= 1");
        if (train.num_test_states < 1) fail("[train] num_test_states must be >= 1");
        if (train.fidelity_every < 1) fail("[train] fidelity_every must be >= 1");
        if (train.normalization != "dimension" && train.normalization != "qubits") {
            fail("[train] normalization must be dimension or qubits");
        }
        if (train.threads < 0) fail("[train] threads must be >= 0");
        if (!(transpile.margin > 0.0)) fail("[transpile] margin must be positive");
        if (transpile.mode != "auto" && transpile.mode != "dense" && transpile.mode != "symbolic") {
            fail("[transpile] mode must be auto, dense or symbolic");
        }
        if (transpile.pair) {
            const auto [a, b] = *transpile.pair;
            if (a == b || a < 0 || b < 0 || a >= lay.size() || b >= lay.size()) {
                fail("[transpile] pair (" + std::to_string(a) + ", " + std::to_string(b) + ") is not a valid pair of " +
                     std::to_string(lay.size()) + " qubits");
            }
        }
        if (bound.num_states < 0) fail("[bound] num_states must be >= 0");
        if (bound.layers < 1) fail("[bound] layers must be >= 1");
        if (output_dir.empty()) fail("[experiment] output_dir must not be empty");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    T value{};
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (s.empty() || ec != std::errc{} || ptr != last) throw ConfigError(key + ": cannot parse '" + raw + "'");
    return value;
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(key + ": expected true or false, got '" + raw + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

inline QubitPair parse_pair(const std::string& key, const std::string& raw) {
    const auto parts = split(raw, ',');
    if (parts.size() != 2) throw ConfigError(key + ": expected 'i,j', got '" + raw + "'");
    return {parse_number<int>(key, parts[0]), parse_number<int>(key, parts[1])};
}

/// "x y z; x y z; ..."
inline std::vector<Position> parse_positions(const std::string& key, const std::string& raw) {
    std::vector<Position> out;
    for (const auto& item : split(raw, ';')) {
        if (item.empty()) continue;
        std::istringstream is(item);
        std::vector<std::string> coords;
        std::string tok;
        while (is >> tok) coords.push_back(tok);
        if (coords.size() != 3) throw ConfigError(key + ": each position needs three coordinates, got '" + item + "'");
        out.push_back({parse_number<double>(key, coords[0]), parse_number<double>(key, coords[1]),
                       parse_number<double>(key, coords[2])});
    }
    return out;
}

}  // namespace detail

inline const std::map<std::string, std::set<std::string>>& config_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"field", {"T", "sigma", "lambda", "t_center"}},
        {"layout", {"kind", "nx", "ny", "dx", "dy", "scale", "positions"}},
        {"train",
         {"depth", "learning_rate", "tolerance", "max_epochs", "num_runs", "num_test_states", "fidelity_every",
          "normalization", "threads"}},
        {"transpile", {"pair", "margin", "mode", "pair_delta", "eliminate"}},
        {"bound", {"num_states", "layers"}},
        {"experiment", {"seed", "output_dir"}},
    };
    return schema;
}

/// Parses and validates a configuration. Missing keys keep their defaults.
inline ExperimentConfig parse_config(std::istream& is) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    const auto& schema = config_schema();
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        const auto it = schema.find(section);
        if (it == schema.end()) {
            if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
            throw ConfigError("unknown section [" + section + "]");
        }
        for (const auto& [key, node] : body) {
            if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            const std::string name = section + "." + key;
            const std::string v = detail::trim(node.data());
            using detail::parse_number;
            if (section == "field") {
                double x = parse_number<double>(name, v);
                if (key == "T") cfg.profile.T = x;
                else if (key == "sigma") cfg.profile.sigma = x;
                else if (key == "lambda") cfg.profile.lambda = x;
                else cfg.profile.t_center = x;
            } else if (section == "layout") {
                if (key == "kind") cfg.layout.kind = v;
                else if (key == "nx") cfg.layout.nx = parse_number<int>(name, v);
                else if (key == "ny") cfg.layout.ny = parse_number<int>(name, v);
                else if (key == "dx") cfg.layout.dx = parse_number<double>(name, v);
                else if (key == "dy") cfg.layout.dy = parse_number<double>(name, v);
                else if (key == "scale") cfg.layout.scale = v;
                else cfg.layout.positions = detail::parse_positions(name, v);
            } else if (section == "train") {
                auto& t = cfg.train;
                if (key == "depth") t.depth = parse_number<int>(name, v);
                else if (key == "learning_rate") t.learning_rate = parse_number<double>(name, v);
                else if (key == "tolerance") t.tolerance = parse_number<double>(name, v);
                else if (key == "max_epochs") t.max_epochs = parse_number<int>(name, v);
                else if (key == "num_runs") t.num_runs = parse_number<int>(name, v);
                else if (key == "num_test_states") t.num_test_states = parse_number<int>(name, v);
                else if (key == "fidelity_every") t.fidelity_every = parse_number<int>(name, v);
                else if (key == "normalization") t.normalization = v;
                else t.threads = parse_number<int>(name, v);
            } else if (section == "transpile") {
                auto& t = cfg.transpile;
                if (key == "pair") t.pair = detail::parse_pair(name, v);
                else if (key == "margin") t.margin = parse_number<double>(name, v);
                else if (key == "mode") t.mode = v;
                else if (key == "pair_delta") t.pair_delta = parse_number<double>(name, v);
                else t.eliminate = detail::parse_bool(name, v);
            } else if (section == "bound") {
                if (key == "num_states") cfg.bound.num_states = parse_number<int>(name, v);
                else cfg.bound.layers = parse_number<int>(name, v);
            } else {
                if (key == "seed") cfg.seed = parse_number<std::uint64_t>(name, v);
                else cfg.output_dir = v;
            }
        }
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig parse_config_string(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

/// Every key with its effective value; parse_config reads it back to an equal config.
inline void write_config(std::ostream& os, const ExperimentConfig& c) {
    using io::format_double;
    os << "[field]\n";
    os << "T = " << format_double(c.profile.T) << "\n";
    os << "sigma = " << format_double(c.profile.sigma) << "\n";
    os << "lambda = " << format_double(c.profile.lambda) << "\n";
    os << "t_center = " << format_double(c.profile.t_center) << "\n\n";
    os << "[layout]\n";
    os << "kind = " << c.layout.kind << "\n";
    os << "nx = " << c.layout.nx << "\n";
    os << "ny = " << c.layout.ny << "\n";
    os << "dx = " << format_double(c.layout.dx) << "\n";
    os << "dy = " << format_double(c.layout.dy) << "\n";
    os << "scale = " << c.layout.scale << "\n";
    if (!c.layout.positions.empty()) {
        os << "positions = ";
        for (std::size_t k = 0; k < c.layout.positions.size(); ++k) {
            const auto& p = c.layout.positions[k];
            os << (k ? "; " : "") << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]);
        }
        os << "\n";
    }
    os << "\n[train]\n";
    os << "depth = " << c.train.depth << "\n";
    os << "learning_rate = " << format_double(c.train.learning_rate) << "\n";
    os << "tolerance = " << format_double(c.train.tolerance) << "\n";
    os << "max_epochs = " << c.train.max_epochs << "\n";
    os << "num_runs = " << c.train.num_runs << "\n";
    os << "num_test_states = " << c.train.num_test_states << "\n";
    os << "fidelity_every = " << c.train.fidelity_every << "\n";
    os << "normalization = " << c.train.normalization << "\n";
    os << "threads = " << c.train.threads << "\n\n";
    os << "[transpile]\n";
    if (c.transpile.pair) os << "pair = " << c.transpile.pair->first << "," << c.transpile.pair->second << "\n";
    os << "margin = " << format_double(c.transpile.margin) << "\n";
    os << "mode = " << c.transpile.mode << "\n";
    if (c.transpile.pair_delta) os << "pair_delta = " << format_double(*c.transpile.pair_delta) << "\n";
    os << "eliminate = " << (c.transpile.eliminate ? "true" : "false") << "\n\n";
    os << "[bound]\n";
    os << "num_states = " << c.bound.num_states << "\n";
    os << "layers = " << c.bound.layers << "\n\n";
    os << "[experiment]\n";
    os << "seed = " << c.seed << "\n";
    os << "output_dir = " << c.output_dir << "\n";
}

inline std::string config_to_string(const ExperimentConfig& c) {
    std::ostringstream os;
    write_config(os, c);
    return os.str();
}

}  // namespace rvqc
