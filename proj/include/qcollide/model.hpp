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

// Physical operators of the collision model: embedded Paulis, open-chain
// Heisenberg Hamiltonians, the partial swap and the depolarising channel.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcollide/errors.hpp"
#include "qcollide/numeric_policy.hpp"
#include "qcollide/qmatrix.hpp"

namespace qcollide {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Physical parameters of one protocol run. Chains are open: n_sites qubits
/// joined by n_sites - 1 bonds.
struct ModelConfig {
    std::size_t n_sites = 3;
    std::vector<double> j_chain = {10.0, 10.0};
    std::vector<double> j_res = {1.0, 1.0};
    double eta = 0.0;    // partial-swap strength, [0, pi/2]
    double omega = 0.0;  // depolarisation strength, [0, 1]
    double dt = 0.01;
    std::size_t steps = 2;
    std::uint64_t seed = kDefaultSeed;

    /// Broadcasts scalar couplings over every bond.
    static ModelConfig uniform(std::size_t n_sites, double j_chain, double j_res) {
        ModelConfig c;
        c.n_sites = n_sites;
        const std::size_t bonds = n_sites > 0 ? n_sites - 1 : 0;
        c.j_chain.assign(bonds, j_chain);
        c.j_res.assign(bonds, j_res);
        return c;
    }

    std::size_t total_qubits() const noexcept { return 2 * n_sites; }

    void validate() const {
        if (n_sites < 1) throw ConfigError("n_sites", "n_sites must be >= 1");
        const std::size_t bonds = n_sites - 1;
        if (j_chain.size() != bonds) {
            throw ConfigError("j_chain", "j_chain must have n_sites - 1 = " + std::to_string(bonds) +
                                             " entries, got " + std::to_string(j_chain.size()));
        }
        if (j_res.size() != bonds) {
            throw ConfigError("j_res", "j_res must have n_sites - 1 = " + std::to_string(bonds) + " entries, got " +
                                           std::to_string(j_res.size()));
        }
        for (double j : j_chain) {
            if (!std::isfinite(j)) throw ConfigError("j_chain", "j_chain entries must be finite");
        }
        for (double j : j_res) {
            if (!std::isfinite(j)) throw ConfigError("j_res", "j_res entries must be finite");
        }
        validate_eta(eta);
        validate_omega(omega);
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError::out_of_range("dt", dt, "(0, inf)");
    }

    static void validate_eta(double eta) {
        if (!(eta >= 0.0 && eta <= kHalfPi)) throw ConfigError::out_of_range("eta", eta, "[0, π/2]");
    }

    static void validate_omega(double omega) {
        if (!(omega >= 0.0 && omega <= 1.0)) throw ConfigError::out_of_range("omega", omega, "[0, 1]");
    }
};

/// Finite Kraus representation. The completeness residual
/// ||sum K^dag K - I||_max is computed once, at construction.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw PreconditionError("KrausChannel needs at least one operator");
        const std::size_t dim = ops_.front().dim();
        ComplexMatrix sum(dim);
        for (const auto& k : ops_) {
            if (k.dim() != dim) throw PreconditionError("KrausChannel operators differ in dimension");
            sum += k.adjoint() * k;
        }
        residual_ = sum.max_abs_diff(ComplexMatrix::identity(dim));
    }

    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
    std::size_t dim() const noexcept { return ops_.front().dim(); }
    double completeness_residual() const noexcept { return residual_; }
    bool is_cptp(double tol = kDefaultPolicy.completeness_tolerance) const noexcept { return residual_ <= tol; }

  private:
    std::vector<ComplexMatrix> ops_;
    double residual_ = 0.0;
};

inline void require_qubit(std::size_t qubit, std::size_t total_qubits, const char* what) {
    if (qubit >= total_qubits) {
        throw PreconditionError(std::string(what) + ": qubit " + std::to_string(qubit) + " out of range for " +
                                std::to_string(total_qubits) + " qubits");
    }
}

/// I^{(x) qubit} (x) sigma_axis (x) I^{(x) (total - qubit - 1)}
inline ComplexMatrix embedded_pauli(Axis axis, std::size_t qubit, std::size_t total_qubits) {
    require_qubit(qubit, total_qubits, "embedded_pauli");
    const std::size_t left = std::size_t{1} << qubit;
    const std::size_t right = std::size_t{1} << (total_qubits - qubit - 1);
    return kron(kron(ComplexMatrix::identity(left), pauli(axis)), ComplexMatrix::identity(right));
}

/// XX + YY + ZZ on the pair (a, b).
inline ComplexMatrix heisenberg_bond(std::size_t a, std::size_t b, std::size_t total_qubits) {
    ComplexMatrix out(std::size_t{1} << total_qubits);
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        out += embedded_pauli(axis, a, total_qubits) * embedded_pauli(axis, b, total_qubits);
    }
    return out;
}

/// (1/2) sum_n J_n (X_n X_{n+1} + Y_n Y_{n+1} + Z_n Z_{n+1}) on the open chain
/// occupying qubits [qubit_offset, qubit_offset + n_sites).
inline ComplexMatrix heisenberg_hamiltonian(std::span<const double> couplings, std::size_t n_sites,
                                            std::size_t qubit_offset, std::size_t total_qubits) {
    if (n_sites < 1) throw ConfigError("n_sites", "heisenberg_hamiltonian: n_sites must be >= 1");
    if (couplings.size() != n_sites - 1) {
        throw ConfigError("couplings", "heisenberg_hamiltonian: expected " + std::to_string(n_sites - 1) +
                                           " couplings for " + std::to_string(n_sites) + " sites, got " +
                                           std::to_string(couplings.size()));
    }
    if (qubit_offset + n_sites > total_qubits) {
        throw PreconditionError("heisenberg_hamiltonian: chain does not fit in " + std::to_string(total_qubits) +
                                " qubits");
    }
    ComplexMatrix h(std::size_t{1} << total_qubits);
    for (std::size_t n = 0; n + 1 < n_sites; ++n) {
        h += heisenberg_bond(qubit_offset + n, qubit_offset + n + 1, total_qubits) * Complex(0.5 * couplings[n]);
    }
    return h;
}

/// Permutation matrix exchanging qubits q1 and q2.
inline ComplexMatrix swap_operator(std::size_t q1, std::size_t q2, std::size_t total_qubits) {
    require_qubit(q1, total_qubits, "swap_operator");
    require_qubit(q2, total_qubits, "swap_operator");
    if (q1 == q2) throw PreconditionError("swap_operator: qubits must differ");
    const std::size_t dim = std::size_t{1} << total_qubits;
    const std::size_t m1 = std::size_t{1} << (total_qubits - 1 - q1);
    const std::size_t m2 = std::size_t{1} << (total_qubits - 1 - q2);
    ComplexMatrix s(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t j = i;
        if (bool(i & m1) != bool(i & m2)) j = i ^ m1 ^ m2;
        s(j, i) = 1.0;
    }
    return s;
}

/// cos(eta) I + i sin(eta) SWAP
inline ComplexMatrix partial_swap(double eta, std::size_t q_sys, std::size_t q_res, std::size_t total_qubits) {
    ModelConfig::validate_eta(eta);
    const std::size_t dim = std::size_t{1} << total_qubits;
    return ComplexMatrix::identity(dim) * Complex(std::cos(eta)) +
           swap_operator(q_sys, q_res, total_qubits) * Complex(0.0, std::sin(eta));
}

/// Kraus form of rho -> (1 - omega) rho + omega I/2 (x) Tr_q rho on one qubit.
inline KrausChannel depolarising_channel(double omega, std::size_t qubit, std::size_t total_qubits) {
    ModelConfig::validate_omega(omega);
    require_qubit(qubit, total_qubits, "depolarising_channel");
    const double w0 = std::sqrt(1.0 - 3.0 * omega / 4.0);
    const double w = std::sqrt(omega / 4.0);
    KrausChannel ch({ComplexMatrix::identity(std::size_t{1} << total_qubits) * Complex(w0),
                     embedded_pauli(Axis::X, qubit, total_qubits) * Complex(w),
                     embedded_pauli(Axis::Y, qubit, total_qubits) * Complex(w),
                     embedded_pauli(Axis::Z, qubit, total_qubits) * Complex(w)});
    if (!ch.is_cptp()) {
        throw NumericalIntegrityError("depolarisation",
                                      "Kraus completeness residual " + std::to_string(ch.completeness_residual()));
    }
    return ch;
}

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim()) {
        throw PreconditionError("apply_channel: channel dim " + std::to_string(ch.dim()) + " vs state dim " +
                                std::to_string(rho.dim()));
    }
    const auto& r = rho.matrix().eigen();
    ComplexMatrix::Storage acc = ComplexMatrix::Storage::Zero(r.rows(), r.cols());
    for (const auto& k : ch.ops()) acc.noalias() += k.eigen() * r * k.eigen().adjoint();
    return DensityMatrix::unchecked(ComplexMatrix(std::move(acc)));
}

}  // namespace qcollide
