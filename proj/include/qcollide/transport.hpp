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

// Coherent excitation transport along the chain: the excitation starts on
// site 1 and the first-to-last coherence element is tracked over protocol
// iterations.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcollide/errors.hpp"
#include "qcollide/model.hpp"
#include "qcollide/observables.hpp"
#include "qcollide/parallel.hpp"
#include "qcollide/protocol.hpp"

namespace qcollide {

struct TransportPoint {
    double eta = 0.0;
    double omega = 0.0;
    std::size_t iterations = 0;
    double coherence_abs = 0.0;
    Complex coherence_value{};
};

/// J_chain = 10, J_res = 1, dt = 0.01 on a 3-site chain.
inline ModelConfig transport_defaults() {
    ModelConfig c = ModelConfig::uniform(3, 10.0, 1.0);
    c.dt = 0.01;
    c.steps = 2;
    return c;
}

/// |10...0><10...0|
inline DensityMatrix excitation_state(std::size_t n_sites) {
    if (n_sites < 2) throw ConfigError("n_sites", "excitation_state: n_sites must be >= 2");
    return DensityMatrix::basis(n_sites, std::size_t{1} << (n_sites - 1));
}

/// `points` evenly spaced values on [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {lo};
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    grid.back() = hi;
    return grid;
}

inline std::vector<double> default_eta_grid() { return uniform_grid(0.0, kHalfPi, 50); }
inline std::vector<double> default_omega_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

namespace detail {

inline ProtocolEngine transport_engine(const ModelConfig& base, double eta, double omega, const RunOptions& options) {
    ModelConfig c = base;
    c.eta = eta;
    c.omega = omega;
    return ProtocolEngine(c, EngineOptions{options.integrity_checks, {}});
}

inline TransportPoint to_point(double eta, double omega, std::size_t n, const DensityMatrix& chain) {
    const Complex c = coherence_element(chain);
    return {eta, omega, n, std::abs(c), c};
}

inline void validate_grids(std::span<const double> eta_grid, std::span<const double> omega_grid) {
    for (double eta : eta_grid) ModelConfig::validate_eta(eta);
    for (double omega : omega_grid) ModelConfig::validate_omega(omega);
}

}  // namespace detail

/// Coherence after `iterations` steps for every (omega, eta) pair. Output is
/// omega-major, eta-minor.
inline std::vector<TransportPoint> sweep_eta_omega(std::span<const double> eta_grid, std::span<const double> omega_grid,
                                                   std::size_t iterations = 2,
                                                   const ModelConfig& config_base = transport_defaults(),
                                                   const RunOptions& options = {}) {
    detail::validate_grids(eta_grid, omega_grid);
    const DensityMatrix init = excitation_state(config_base.n_sites);
    const std::size_t n_eta = eta_grid.size();
    std::vector<TransportPoint> out(n_eta * omega_grid.size());
    parallel_for_index(out.size(), options.threads, [&](std::size_t idx) {
        const double omega = omega_grid[idx / n_eta];
        const double eta = eta_grid[idx % n_eta];
        const ProtocolEngine engine = detail::transport_engine(config_base, eta, omega, options);
        DensityMatrix joint = engine.initial_state(init);
        for (std::size_t n = 0; n < iterations; ++n) joint = engine.step(joint);
        out[idx] = detail::to_point(eta, omega, iterations, engine.chain_marginal(joint));
    });
    return out;
}

/// Full time series n = 0..max_iterations for each omega at fixed eta.
/// Output is omega-major, iteration-minor.
inline std::vector<TransportPoint> evolve_series(double eta, std::span<const double> omega_grid,
                                                 std::size_t max_iterations,
                                                 const ModelConfig& config_base = transport_defaults(),
                                                 const RunOptions& options = {}) {
    detail::validate_grids(std::span<const double>(&eta, 1), omega_grid);
    const DensityMatrix init = excitation_state(config_base.n_sites);
    const std::size_t per_series = max_iterations + 1;
    std::vector<TransportPoint> out(per_series * omega_grid.size());
    parallel_for_index(omega_grid.size(), options.threads, [&](std::size_t k) {
        const double omega = omega_grid[k];
        const ProtocolEngine engine = detail::transport_engine(config_base, eta, omega, options);
        const auto records = run(engine, init, max_iterations);
        for (const auto& rec : records) {
            out[k * per_series + rec.step] = detail::to_point(eta, omega, rec.step, rec.chain_state);
        }
    });
    return out;
}

}  // namespace qcollide
