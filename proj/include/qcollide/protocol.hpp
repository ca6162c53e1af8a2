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

// The four-phase collision protocol on the joint chain + reservoir state.
// System qubits occupy indices 0..N-1, reservoir qubits N..2N-1; system qubit
// m collides with reservoir qubit N + m.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcollide/errors.hpp"
#include "qcollide/model.hpp"
#include "qcollide/numeric_policy.hpp"
#include "qcollide/observables.hpp"
#include "qcollide/qmatrix.hpp"

namespace qcollide {

enum class Phase { Exchange, Depolarisation, ReservoirTransfer, ChainTransfer };

inline constexpr std::array<Phase, 4> kPhaseOrder = {Phase::Exchange, Phase::Depolarisation,
                                                     Phase::ReservoirTransfer, Phase::ChainTransfer};

inline std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Exchange:
            return "exchange";
        case Phase::Depolarisation:
            return "depolarisation";
        case Phase::ReservoirTransfer:
            return "reservoir-transfer";
        case Phase::ChainTransfer:
            return "chain-transfer";
    }
    return "unknown";
}

struct EngineOptions {
    bool integrity_checks = true;
    NumericPolicy policy{};
};

/// Observables after `step` applications of the protocol.
struct TrajectoryRecord {
    std::size_t step = 0;
    DensityMatrix chain_state;
    std::optional<Complex> coherence_1N;  // absent for single-site chains
    std::optional<double> trace_distance;  // filled by paired runs
};

inline std::vector<std::size_t> qubit_range(std::size_t first, std::size_t count) {
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
    return out;
}

/// chain_init (x) reservoir_init on 2N qubits.
inline DensityMatrix initial_joint_state(const DensityMatrix& chain_init, const DensityMatrix& reservoir_init) {
    if (chain_init.num_qubits() != reservoir_init.num_qubits()) {
        throw PreconditionError("initial_joint_state: chain and reservoir sizes differ");
    }
    return kron(chain_init, reservoir_init);
}

/// chain_init (x) (I/2)^{(x) N}
inline DensityMatrix initial_joint_state(const DensityMatrix& chain_init) {
    return initial_joint_state(chain_init, DensityMatrix::maximally_mixed(chain_init.num_qubits()));
}

/// Precomputed operators for one (config, eta, omega). Immutable once built and
/// safe to share between threads; each trajectory owns its own state.
class ProtocolEngine {
  public:
    explicit ProtocolEngine(ModelConfig config, EngineOptions options = {})
        : config_(std::move(config)), options_(options) {
        config_.validate();
        const std::size_t n = config_.n_sites;
        const std::size_t total = config_.total_qubits();
        const std::size_t dim = std::size_t{1} << total;
        if (dim > options_.policy.max_dim) {
            throw DimensionLimitError("ProtocolEngine: " + std::to_string(total) + " qubits exceed the dimension limit");
        }

        exchange_ = ComplexMatrix::identity(dim);
        for (std::size_t m = 0; m < n; ++m) {
            u_exchange_.push_back(partial_swap(config_.eta, m, n + m, total));
            exchange_ = exchange_ * u_exchange_.back();
            depol_.push_back(depolarising_channel(config_.omega, n + m, total));
        }
        u_res_ = expm_hermitian_generator(heisenberg_hamiltonian(config_.j_res, n, n, total), config_.dt,
                                          options_.policy);
        u_chain_ = expm_hermitian_generator(heisenberg_hamiltonian(config_.j_chain, n, 0, total), config_.dt,
                                            options_.policy);

        const double tol = options_.policy.unitarity_tolerance;
        for (const auto& u : u_exchange_) {
            if (!u.is_unitary(tol)) throw NumericalIntegrityError("exchange", "partial swap is not unitary");
        }
        if (!exchange_.is_unitary(tol)) throw NumericalIntegrityError("exchange", "exchange product is not unitary");
        if (!u_res_.is_unitary(tol)) throw NumericalIntegrityError("reservoir-transfer", "propagator is not unitary");
        if (!u_chain_.is_unitary(tol)) throw NumericalIntegrityError("chain-transfer", "propagator is not unitary");
        if (commutator(u_res_, u_chain_).max_abs() > tol) {
            throw NumericalIntegrityError("chain-transfer", "chain and reservoir propagators do not commute");
        }
    }

    const ModelConfig& config() const noexcept { return config_; }
    const EngineOptions& options() const noexcept { return options_; }
    std::size_t chain_qubits() const noexcept { return config_.n_sites; }
    std::size_t total_qubits() const noexcept { return config_.total_qubits(); }

    const std::vector<ComplexMatrix>& exchange_unitaries() const noexcept { return u_exchange_; }
    /// Product of all partial swaps; they act on disjoint pairs and commute.
    const ComplexMatrix& exchange_unitary() const noexcept { return exchange_; }
    const std::vector<KrausChannel>& depolarising_channels() const noexcept { return depol_; }
    const ComplexMatrix& reservoir_propagator() const noexcept { return u_res_; }
    const ComplexMatrix& chain_propagator() const noexcept { return u_chain_; }

    DensityMatrix apply_phase(Phase phase, const DensityMatrix& rho) const {
        require_joint(rho);
        switch (phase) {
            case Phase::Exchange:
                return DensityMatrix::unchecked(rho.matrix().conjugated_by(exchange_));
            case Phase::Depolarisation: {
                DensityMatrix out = rho;
                for (const auto& ch : depol_) out = apply_channel(ch, out);
                return out;
            }
            case Phase::ReservoirTransfer:
                return DensityMatrix::unchecked(rho.matrix().conjugated_by(u_res_));
            case Phase::ChainTransfer:
                return DensityMatrix::unchecked(rho.matrix().conjugated_by(u_chain_));
        }
        throw PreconditionError("apply_phase: unknown phase");
    }

    /// One full iteration: exchange, depolarisation, reservoir transfer, chain
    /// transfer. With integrity checks on, trace and Hermiticity are verified
    /// after every phase and positivity after the last.
    DensityMatrix step(const DensityMatrix& rho) const {
        DensityMatrix out = rho;
        for (Phase phase : kPhaseOrder) {
            out = apply_phase(phase, out);
            if (options_.integrity_checks) {
                const bool last = phase == Phase::ChainTransfer;
                if (auto why = out.violation(options_.policy, last)) {
                    throw NumericalIntegrityError(std::string(phase_name(phase)), *why);
                }
            }
        }
        return out;
    }

    DensityMatrix chain_marginal(const DensityMatrix& joint) const {
        require_joint(joint);
        return partial_trace(joint, qubit_range(0, config_.n_sites));
    }

    DensityMatrix reservoir_marginal(const DensityMatrix& joint) const {
        require_joint(joint);
        return partial_trace(joint, qubit_range(config_.n_sites, config_.n_sites));
    }

    DensityMatrix initial_state(const DensityMatrix& chain_init) const {
        if (chain_init.num_qubits() != config_.n_sites) {
            throw PreconditionError("initial state has " + std::to_string(chain_init.num_qubits()) +
                                    " qubits, chain has " + std::to_string(config_.n_sites));
        }
        return initial_joint_state(chain_init);
    }

  private:
    void require_joint(const DensityMatrix& rho) const {
        if (rho.num_qubits() != total_qubits()) {
            throw PreconditionError("joint state has " + std::to_string(rho.num_qubits()) + " qubits, engine expects " +
                                    std::to_string(total_qubits()));
        }
    }

    ModelConfig config_;
    EngineOptions options_;
    std::vector<ComplexMatrix> u_exchange_;
    ComplexMatrix exchange_;
    std::vector<KrausChannel> depol_;
    ComplexMatrix u_res_;
    ComplexMatrix u_chain_;
};

inline DensityMatrix step(const ProtocolEngine& engine, const DensityMatrix& rho) { return engine.step(rho); }

inline TrajectoryRecord make_record(const ProtocolEngine& engine, std::size_t n, const DensityMatrix& joint) {
    DensityMatrix chain = engine.chain_marginal(joint);
    std::optional<Complex> coherence;
    if (chain.num_qubits() >= 2) coherence = coherence_element(chain);
    return {n, std::move(chain), coherence, std::nullopt};
}

/// Record n holds the observables after n steps; record 0 is the initial state.
inline std::vector<TrajectoryRecord> run(const ProtocolEngine& engine, const DensityMatrix& chain_init,
                                         std::size_t steps) {
    std::vector<TrajectoryRecord> records;
    records.reserve(steps + 1);
    DensityMatrix joint = engine.initial_state(chain_init);
    records.push_back(make_record(engine, 0, joint));
    for (std::size_t n = 1; n <= steps; ++n) {
        joint = engine.step(joint);
        records.push_back(make_record(engine, n, joint));
    }
    return records;
}

/// Memoryless reference: every iteration couples the chain to a fresh
/// maximally mixed reservoir, discards it, then runs the chain propagator.
/// Built only from N-qubit and 2N-qubit primitives, independent of the
/// depolarising machinery in ProtocolEngine.
class FreshReservoirEngine {
  public:
    explicit FreshReservoirEngine(ModelConfig config) : config_(std::move(config)) {
        config_.validate();
        const std::size_t n = config_.n_sites;
        const std::size_t total = config_.total_qubits();
        exchange_ = ComplexMatrix::identity(std::size_t{1} << total);
        for (std::size_t m = 0; m < n; ++m) exchange_ = exchange_ * partial_swap(config_.eta, m, n + m, total);
        u_chain_ = expm_hermitian_generator(heisenberg_hamiltonian(config_.j_chain, n, 0, n), config_.dt);
    }

    DensityMatrix step_chain(const DensityMatrix& chain) const {
        const std::size_t n = config_.n_sites;
        const DensityMatrix joint = initial_joint_state(chain);
        const DensityMatrix collided = DensityMatrix::unchecked(joint.matrix().conjugated_by(exchange_));
        const DensityMatrix reduced = partial_trace(collided, qubit_range(0, n));
        return DensityMatrix::unchecked(reduced.matrix().conjugated_by(u_chain_));
    }

  private:
    ModelConfig config_;
    ComplexMatrix exchange_;
    ComplexMatrix u_chain_;
};

}  // namespace qcollide
