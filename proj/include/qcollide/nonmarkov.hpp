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

// Discretised trace-distance (BLP) non-Markovianity of the collision model.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qcollide/errors.hpp"
#include "qcollide/model.hpp"
#include "qcollide/parallel.hpp"
#include "qcollide/protocol.hpp"
#include "qcollide/qmatrix.hpp"

namespace qcollide {

/// Point in the Bloch ball: radius r in [0,1], polar theta in [0,pi],
/// azimuth phi in [0,2pi].
struct BlochState {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;

    void validate() const {
        if (!(r >= 0.0 && r <= 1.0)) throw ConfigError::out_of_range("r", r, "[0, 1]");
        if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ConfigError::out_of_range("theta", theta, "[0, π]");
        if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi)) throw ConfigError::out_of_range("phi", phi, "[0, 2π]");
    }

    /// Opposite point on the sphere (only meaningful for r = 1).
    BlochState antipode() const {
        double p = phi + std::numbers::pi;
        if (p > 2.0 * std::numbers::pi) p -= 2.0 * std::numbers::pi;
        return {r, std::numbers::pi - theta, p};
    }
};

inline DensityMatrix bloch_to_density(const BlochState& s) {
    s.validate();
    const double z = s.r * std::cos(s.theta);
    const Complex off = s.r * std::sin(s.theta) * std::exp(Complex(0.0, -s.phi));
    ComplexMatrix m{{0.5 * (1.0 + z), 0.5 * off}, {0.5 * std::conj(off), 0.5 * (1.0 - z)}};
    return DensityMatrix(std::move(m));
}

/// Sum of the positive increments D_n - D_{n-1} of a distance series.
inline double blp_measure(std::span<const double> series) {
    double total = 0.0;
    for (std::size_t n = 1; n < series.size(); ++n) {
        const double delta = series[n] - series[n - 1];
        if (delta > 0.0) total += delta;
    }
    return total;
}

/// D_n between the chain marginals of two trajectories driven by the same
/// engine, n = 0..steps.
inline std::vector<double> paired_trajectory_distances(const ProtocolEngine& engine, const DensityMatrix& init1,
                                                       const DensityMatrix& init2, std::size_t steps) {
    if (init1.num_qubits() != engine.chain_qubits() || init2.num_qubits() != engine.chain_qubits()) {
        throw PreconditionError("paired_trajectory_distances: initial states must live on the chain qubits");
    }
    const NumericPolicy& policy = engine.options().policy;
    std::vector<double> series;
    series.reserve(steps + 1);
    DensityMatrix a = engine.initial_state(init1);
    DensityMatrix b = engine.initial_state(init2);
    series.push_back(trace_distance(init1, init2, policy));
    for (std::size_t n = 1; n <= steps; ++n) {
        a = engine.step(a);
        b = engine.step(b);
        series.push_back(trace_distance(engine.chain_marginal(a), engine.chain_marginal(b), policy));
    }
    return series;
}

enum class NonMarkovModel { OneByOne, ThreeByThree };

inline std::string_view model_name(NonMarkovModel m) { return m == NonMarkovModel::OneByOne ? "1x1" : "3x3"; }

struct NonMarkovResult {
    NonMarkovModel model = NonMarkovModel::OneByOne;
    double eta = 0.0;
    double omega = 0.0;
    std::size_t steps = 0;
    double n_value = 0.0;
    std::string pair_descriptor;
    std::array<DensityMatrix, 2> best_pair;
    std::vector<double> distance_series;
    std::optional<double> random_pairs_max;  // 1x1 only: best value among the random candidates
};

using BlochPair = std::array<BlochState, 2>;

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// r, theta, phi drawn independently and uniformly over their ranges.
inline std::vector<BlochPair> sample_bloch_pairs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&rng] {
        BlochState s;
        s.r = unit_uniform(rng);
        s.theta = std::numbers::pi * unit_uniform(rng);
        s.phi = 2.0 * std::numbers::pi * unit_uniform(rng);
        return s;
    };
    std::vector<BlochPair> pairs(count);
    for (auto& p : pairs) {
        p[0] = draw();
        p[1] = draw();
    }
    return pairs;
}

inline std::string describe_bloch_pair(std::size_t index, const BlochPair& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "random#%zu:(%.6g %.6g %.6g)|(%.6g %.6g %.6g)", index, p[0].r, p[0].theta, p[0].phi,
                  p[1].r, p[1].theta, p[1].phi);
    return buf;
}

inline ModelConfig one_by_one_config(double eta, double omega) {
    ModelConfig c = ModelConfig::uniform(1, 0.0, 0.0);
    c.eta = eta;
    c.omega = omega;
    return c;
}

/// Couplings used for the 3x3 measurement: the transport defaults.
inline ModelConfig three_by_three_config(double eta, double omega) {
    ModelConfig c = ModelConfig::uniform(3, 10.0, 1.0);
    c.dt = 0.01;
    c.eta = eta;
    c.omega = omega;
    return c;
}

/// BLP value of each Bloch pair under one engine.
inline std::vector<double> bloch_pair_values(const ProtocolEngine& engine, std::span<const BlochPair> pairs,
                                             std::size_t steps) {
    std::vector<double> values;
    values.reserve(pairs.size());
    for (const auto& p : pairs) {
        const auto series = paired_trajectory_distances(engine, bloch_to_density(p[0]), bloch_to_density(p[1]), steps);
        values.push_back(blp_measure(series));
    }
    return values;
}

/// Maximises the measure over {|0>,|1>} and `n_random_pairs` sampled pairs.
/// The antipodal pair is evaluated first and only a strictly larger random
/// value displaces it.
inline NonMarkovResult measure_1x1(double eta, double omega, std::size_t steps = 20, std::size_t n_random_pairs = 1000,
                                   std::uint64_t seed = kDefaultSeed, const RunOptions& options = {}) {
    ModelConfig config = one_by_one_config(eta, omega);
    config.steps = steps;
    config.seed = seed;
    const ProtocolEngine engine(config, EngineOptions{options.integrity_checks, {}});

    NonMarkovResult result;
    result.model = NonMarkovModel::OneByOne;
    result.eta = eta;
    result.omega = omega;
    result.steps = steps;
    result.best_pair = {DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1)};
    result.distance_series = paired_trajectory_distances(engine, result.best_pair[0], result.best_pair[1], steps);
    result.n_value = blp_measure(result.distance_series);
    result.pair_descriptor = "|0>,|1>";

    const auto pairs = sample_bloch_pairs(n_random_pairs, seed);
    std::optional<double> random_max;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const DensityMatrix a = bloch_to_density(pairs[i][0]);
        const DensityMatrix b = bloch_to_density(pairs[i][1]);
        auto series = paired_trajectory_distances(engine, a, b, steps);
        const double value = blp_measure(series);
        if (!random_max || value > *random_max) random_max = value;
        if (value > result.n_value) {
            result.n_value = value;
            result.best_pair = {a, b};
            result.distance_series = std::move(series);
            result.pair_descriptor = describe_bloch_pair(i, pairs[i]);
        }
    }
    result.random_pairs_max = random_max;
    return result;
}

/// Measure for the fixed pair {|000>,|111>}; a lower bound on the maximum
/// over all pairs.
inline NonMarkovResult measure_3x3(double eta, double omega, std::size_t steps = 20, const RunOptions& options = {},
                                   std::optional<ModelConfig> base = std::nullopt) {
    ModelConfig config = base ? *base : three_by_three_config(eta, omega);
    config.eta = eta;
    config.omega = omega;
    config.steps = steps;
    if (config.n_sites != 3) throw ConfigError("n_sites", "measure_3x3 requires n_sites = 3");
    const ProtocolEngine engine(config, EngineOptions{options.integrity_checks, {}});

    NonMarkovResult result;
    result.model = NonMarkovModel::ThreeByThree;
    result.eta = eta;
    result.omega = omega;
    result.steps = steps;
    result.best_pair = {DensityMatrix::basis(3, 0b000), DensityMatrix::basis(3, 0b111)};
    result.distance_series = paired_trajectory_distances(engine, result.best_pair[0], result.best_pair[1], steps);
    result.n_value = blp_measure(result.distance_series);
    result.pair_descriptor = "|000>,|111>";
    return result;
}

/// One result per grid point, in grid order; grid points run in parallel.
inline std::vector<NonMarkovResult> sweep_omega(NonMarkovModel model, double eta, std::span<const double> omega_grid,
                                                std::size_t steps = 20, std::size_t n_random_pairs = 1000,
                                                std::uint64_t seed = kDefaultSeed, const RunOptions& options = {}) {
    ModelConfig::validate_eta(eta);
    for (double omega : omega_grid) ModelConfig::validate_omega(omega);
    std::vector<std::optional<NonMarkovResult>> slots(omega_grid.size());
    parallel_for_index(omega_grid.size(), options.threads, [&](std::size_t i) {
        slots[i] = model == NonMarkovModel::OneByOne
                       ? measure_1x1(eta, omega_grid[i], steps, n_random_pairs, seed, options)
                       : measure_3x3(eta, omega_grid[i], steps, options);
    });
    std::vector<NonMarkovResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace qcollide
