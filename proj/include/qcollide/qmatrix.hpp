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

// Dense complex operator algebra.
//
// Qubit ordering is global: qubit 0 is the most significant bit of a
// computational-basis index, so on n qubits the basis state |b_0 b_1 ... b_{n-1}>
// has index sum_q b_q * 2^(n-1-q). kron(a, b) places a on the lower-numbered
// qubits.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcollide/errors.hpp"
#include "qcollide/numeric_policy.hpp"

namespace qcollide {

using Complex = std::complex<double>;

/// Square dense complex matrix, dim >= 1. Thin value wrapper over Eigen that
/// enforces squareness and carries tolerance-based equality.
class ComplexMatrix {
  public:
    using Storage = Eigen::MatrixXcd;

    ComplexMatrix() : data_(Storage::Zero(1, 1)) {}

    explicit ComplexMatrix(std::size_t dim) : data_(Storage::Zero(checked_dim(dim), checked_dim(dim))) {}

    explicit ComplexMatrix(Storage data) : data_(std::move(data)) {
        if (data_.rows() == 0 || data_.rows() != data_.cols()) {
            throw PreconditionError("ComplexMatrix must be square with dim >= 1, got " +
                                    std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()));
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : ComplexMatrix(rows.size()) {
        Eigen::Index i = 0;
        for (const auto& row : rows) {
            if (row.size() != rows.size()) {
                throw PreconditionError("ComplexMatrix initializer must be square");
            }
            Eigen::Index j = 0;
            for (const auto& v : row) data_(i, j++) = v;
            ++i;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        return ComplexMatrix(Storage::Identity(checked_dim(dim), checked_dim(dim)));
    }

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

    static ComplexMatrix diagonal(std::span<const Complex> entries) {
        ComplexMatrix m(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    /// |psi><psi|, without normalisation.
    static ComplexMatrix outer(std::span<const Complex> psi) {
        ComplexMatrix m(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) {
            for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
        }
        return m;
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.rows()); }

    Complex operator()(std::size_t i, std::size_t j) const {
        return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    Complex& operator()(std::size_t i, std::size_t j) {
        return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    const Storage& eigen() const noexcept { return data_; }

    ComplexMatrix adjoint() const { return ComplexMatrix(Storage(data_.adjoint())); }
    Complex trace() const { return data_.trace(); }

    /// max_ij |m_ij|
    double max_abs() const { return data_.cwiseAbs().maxCoeff(); }

    double max_abs_diff(const ComplexMatrix& other) const {
        require_same_dim(other, "max_abs_diff");
        return (data_ - other.data_).cwiseAbs().maxCoeff();
    }

    bool approx_equal(const ComplexMatrix& other, double tol = kDefaultPolicy.entry_tolerance) const {
        return dim() == other.dim() && max_abs_diff(other) <= tol;
    }

    double hermiticity_residual() const { return (data_ - data_.adjoint()).cwiseAbs().maxCoeff(); }

    bool is_hermitian(double tol = kDefaultPolicy.hermiticity_tolerance) const {
        return hermiticity_residual() <= tol;
    }

    double unitarity_residual() const {
        return (data_.adjoint() * data_ - Storage::Identity(data_.rows(), data_.cols())).cwiseAbs().maxCoeff();
    }

    bool is_unitary(double tol = kDefaultPolicy.unitarity_tolerance) const { return unitarity_residual() <= tol; }

    /// U * this * U^dag
    ComplexMatrix conjugated_by(const ComplexMatrix& u) const {
        require_same_dim(u, "conjugated_by");
        return ComplexMatrix(Storage(u.data_ * data_ * u.data_.adjoint()));
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o, "operator+=");
        data_ += o.data_;
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o, "operator-=");
        data_ -= o.data_;
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        data_ *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_dim(b, "operator*");
        return ComplexMatrix(Storage(a.data_ * b.data_));
    }

  private:
    static Eigen::Index checked_dim(std::size_t dim) {
        if (dim == 0) throw PreconditionError("ComplexMatrix dim must be >= 1");
        return static_cast<Eigen::Index>(dim);
    }

    void require_same_dim(const ComplexMatrix& o, const char* what) const {
        if (dim() != o.dim()) {
            throw PreconditionError(std::string(what) + ": dimension mismatch " + std::to_string(dim()) +
                                    " vs " + std::to_string(o.dim()));
        }
    }

    Storage data_;
};

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// Pauli matrices

enum class Axis { X, Y, Z };

inline ComplexMatrix pauli(Axis axis) {
    using namespace std::complex_literals;
    switch (axis) {
        case Axis::X:
            return {{0.0, 1.0}, {1.0, 0.0}};
        case Axis::Y:
            return {{0.0, -1i}, {1i, 0.0}};
        case Axis::Z:
            return {{1.0, 0.0}, {0.0, -1.0}};
    }
    throw PreconditionError("unknown Pauli axis");
}

// ---------------------------------------------------------------------------
// Kronecker product

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          const NumericPolicy& policy = kDefaultPolicy) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    if (db != 0 && da > policy.max_dim / db) {
        throw DimensionLimitError("kron: result dimension " + std::to_string(da) + "*" + std::to_string(db) +
                                  " exceeds the limit " + std::to_string(policy.max_dim));
    }
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

/// Kronecker product of a sequence, left to right.
inline ComplexMatrix kron_all(std::span<const ComplexMatrix> factors, const NumericPolicy& policy = kDefaultPolicy) {
    if (factors.empty()) throw PreconditionError("kron_all: empty factor list");
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i], policy);
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian spectral decomposition and exponentials

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors; unitary
};

inline HermitianEigen hermitian_eig(const ComplexMatrix& m, const NumericPolicy& policy = kDefaultPolicy) {
    const double residual = m.hermiticity_residual();
    if (residual > policy.hermiticity_tolerance) {
        throw PreconditionError("hermitian_eig: input is not Hermitian (residual " + std::to_string(residual) +
                                ")");
    }
    // Symmetrise so the solver only ever sees an exactly Hermitian matrix.
    const ComplexMatrix::Storage h = 0.5 * (m.eigen() + m.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Storage> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw PreconditionError("hermitian_eig: eigensolver did not converge");
    }
    HermitianEigen out{std::vector<double>(solver.eigenvalues().begin(), solver.eigenvalues().end()),
                       ComplexMatrix(solver.eigenvectors())};
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const NumericPolicy& policy = kDefaultPolicy) {
    const double residual = m.hermiticity_residual();
    if (residual > policy.hermiticity_tolerance) {
        throw PreconditionError("hermitian_eigenvalues: input is not Hermitian (residual " +
                                std::to_string(residual) + ")");
    }
    const ComplexMatrix::Storage h = 0.5 * (m.eigen() + m.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Storage> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw PreconditionError("hermitian_eigenvalues: eigensolver did not converge");
    }
    return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

/// exp(-i h t) for Hermitian h, via V diag(exp(-i lambda t)) V^dag.
inline ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t,
                                              const NumericPolicy& policy = kDefaultPolicy) {
    const HermitianEigen eig = hermitian_eig(h, policy);
    const auto n = static_cast<Eigen::Index>(h.dim());
    Eigen::VectorXcd phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        phases(i) = std::exp(Complex(0.0, -eig.values[static_cast<std::size_t>(i)] * t));
    }
    const auto& v = eig.vectors.eigen();
    return ComplexMatrix(ComplexMatrix::Storage(v * phases.asDiagonal() * v.adjoint()));
}

// ---------------------------------------------------------------------------
// Density matrices

/// Human-readable reason a matrix is not a valid density matrix, or nullopt.
inline std::optional<std::string> density_violation(const ComplexMatrix& m, const NumericPolicy& policy = kDefaultPolicy,
                                                    bool check_positivity = true) {
    const double herm = m.hermiticity_residual();
    if (herm > policy.hermiticity_tolerance) {
        return "not Hermitian (residual " + std::to_string(herm) + ")";
    }
    const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_err > policy.trace_tolerance) {
        return "trace deviates from 1 by " + std::to_string(trace_err);
    }
    if (check_positivity) {
        const double lowest = hermitian_eigenvalues(m, policy).front();
        if (lowest < -policy.positivity_tolerance) {
            return "not positive semidefinite (smallest eigenvalue " + std::to_string(lowest) + ")";
        }
    }
    return std::nullopt;
}

inline std::size_t qubit_count_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw PreconditionError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

/// Hermitian, unit-trace, positive semidefinite matrix on a qubit register.
class DensityMatrix {
  public:
    /// |0><0| on one qubit.
    DensityMatrix() : DensityMatrix(basis(1, 0)) {}

    /// Validates all density-matrix invariants.
    explicit DensityMatrix(ComplexMatrix mat, const NumericPolicy& policy = kDefaultPolicy)
        : mat_(std::move(mat)), num_qubits_(qubit_count_for_dim(mat_.dim())) {
        if (auto why = density_violation(mat_, policy)) {
            throw PreconditionError("invalid density matrix: " + *why);
        }
    }

    /// Skips validation; for results of operations that preserve the
    /// invariants by construction.
    static DensityMatrix unchecked(ComplexMatrix mat) { return DensityMatrix(std::move(mat), Unchecked{}); }

    static DensityMatrix pure(std::span<const Complex> amplitudes) {
        double norm2 = 0.0;
        for (const auto& a : amplitudes) norm2 += std::norm(a);
        if (norm2 <= 0.0) throw PreconditionError("pure state with zero norm");
        std::vector<Complex> psi(amplitudes.begin(), amplitudes.end());
        for (auto& a : psi) a /= std::sqrt(norm2);
        return unchecked(ComplexMatrix::outer(psi));
    }

    /// Computational-basis projector |index><index| on num_qubits.
    static DensityMatrix basis(std::size_t num_qubits, std::size_t index) {
        const std::size_t dim = std::size_t{1} << num_qubits;
        if (index >= dim) throw PreconditionError("basis index out of range");
        ComplexMatrix m(dim);
        m(index, index) = 1.0;
        return unchecked(std::move(m));
    }

    static DensityMatrix maximally_mixed(std::size_t num_qubits) {
        const std::size_t dim = std::size_t{1} << num_qubits;
        return unchecked(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
    }

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return mat_.dim(); }
    Complex operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    double purity() const { return (mat_ * mat_).trace().real(); }

    std::optional<std::string> violation(const NumericPolicy& policy = kDefaultPolicy,
                                         bool check_positivity = true) const {
        return density_violation(mat_, policy, check_positivity);
    }

    bool approx_equal(const DensityMatrix& o, double tol = kDefaultPolicy.entry_tolerance) const {
        return mat_.approx_equal(o.mat_, tol);
    }

  private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix mat, Unchecked) : mat_(std::move(mat)), num_qubits_(qubit_count_for_dim(mat_.dim())) {}

    ComplexMatrix mat_;
    std::size_t num_qubits_;
};

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b, const NumericPolicy& policy = kDefaultPolicy) {
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix(), policy));
}

/// Reduced state on `keep`, in the given order (keep[0] becomes the most
/// significant qubit of the result).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.num_qubits();
    if (keep.empty()) throw PreconditionError("partial_trace: keep set is empty");
    std::vector<bool> kept(n, false);
    for (std::size_t q : keep) {
        if (q >= n) {
            throw PreconditionError("partial_trace: qubit index " + std::to_string(q) + " out of range for " +
                                    std::to_string(n) + " qubits");
        }
        if (kept[q]) throw PreconditionError("partial_trace: duplicate qubit index " + std::to_string(q));
        kept[q] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!kept[q]) traced.push_back(q);
    }

    auto spread = [n](std::size_t compact, std::span<const std::size_t> qubits) {
        std::size_t full = 0;
        const std::size_t k = qubits.size();
        for (std::size_t p = 0; p < k; ++p) {
            if ((compact >> (k - 1 - p)) & 1U) full |= std::size_t{1} << (n - 1 - qubits[p]);
        }
        return full;
    };

    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    std::vector<std::size_t> kept_index(dk);
    std::vector<std::size_t> traced_index(dt);
    for (std::size_t a = 0; a < dk; ++a) kept_index[a] = spread(a, keep);
    for (std::size_t t = 0; t < dt; ++t) traced_index[t] = spread(t, traced);

    ComplexMatrix out(dk);
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
            Complex acc{};
            for (std::size_t t = 0; t < dt; ++t) acc += rho(kept_index[a] | traced_index[t], kept_index[b] | traced_index[t]);
            out(a, b) = acc;
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// (1/2) ||r1 - r2||_1, in [0, 1].
inline double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                             const NumericPolicy& policy = kDefaultPolicy) {
    if (r1.dim() != r2.dim()) {
        throw PreconditionError("trace_distance: dimension mismatch " + std::to_string(r1.dim()) + " vs " +
                                std::to_string(r2.dim()));
    }
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(r1.matrix() - r2.matrix(), policy)) sum += std::abs(lambda);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

}  // namespace qcollide
