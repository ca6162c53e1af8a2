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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "qcollide/model.hpp"
#include "qcollide/transport.hpp"
#include "test_support.hpp"

namespace qcollide {
namespace {

using testing::random_density;

ComplexMatrix total_z(std::size_t qubits, std::size_t first, std::size_t count) {
    ComplexMatrix z(std::size_t{1} << qubits);
    for (std::size_t q = first; q < first + count; ++q) z += embedded_pauli(Axis::Z, q, qubits);
    return z;
}

TEST(EmbeddedPauli, Examples) {
    EXPECT_TRUE(embedded_pauli(Axis::Z, 0, 1).approx_equal(pauli(Axis::Z)));
    EXPECT_TRUE(embedded_pauli(Axis::X, 1, 2).approx_equal(kron(ComplexMatrix::identity(2), pauli(Axis::X))));
    EXPECT_TRUE((embedded_pauli(Axis::X, 0, 2) * embedded_pauli(Axis::X, 1, 2))
                    .approx_equal(kron(pauli(Axis::X), pauli(Axis::X))));
    EXPECT_THROW(embedded_pauli(Axis::Y, 3, 3), PreconditionError);
}

TEST(HeisenbergHamiltonian, SingleSiteIsZero) {
    const ComplexMatrix h = heisenberg_hamiltonian({}, 1, 0, 2);
    EXPECT_EQ(h.dim(), 4u);
    EXPECT_LE(h.max_abs(), 0.0);
}

TEST(HeisenbergHamiltonian, TwoSiteSpectrum) {
    const std::vector<double> j = {1.0};
    const auto eig = hermitian_eig(heisenberg_hamiltonian(j, 2, 0, 2));
    const std::vector<double> expected = {-1.5, 0.5, 0.5, 0.5};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(eig.values[i], expected[i], 1e-12);
}

TEST(HeisenbergHamiltonian, ConservesMagnetisation) {
    const std::vector<double> j = {10.0, 10.0};
    const ComplexMatrix h = heisenberg_hamiltonian(j, 3, 0, 3);
    EXPECT_TRUE(h.is_hermitian(0.0));
    EXPECT_LE(commutator(h, total_z(3, 0, 3)).max_abs(), 1e-12);

    const std::vector<double> jr = {0.3, -1.7};
    const ComplexMatrix hr = heisenberg_hamiltonian(jr, 3, 3, 6);
    EXPECT_LE(commutator(hr, total_z(6, 0, 6)).max_abs(), 1e-12);
}

TEST(HeisenbergHamiltonian, ActsOnlyOnItsQubits) {
    const std::vector<double> j = {1.0};
    const ComplexMatrix h = heisenberg_hamiltonian(j, 2, 1, 4);
    const ComplexMatrix expected = kron(kron(ComplexMatrix::identity(2), heisenberg_bond(0, 1, 2) * Complex(0.5)),
                                        ComplexMatrix::identity(2));
    EXPECT_TRUE(h.approx_equal(expected));
}

TEST(HeisenbergHamiltonian, Errors) {
    const std::vector<double> j = {1.0, 2.0};
    EXPECT_THROW(heisenberg_hamiltonian(j, 2, 0, 2), ConfigError);
    EXPECT_THROW(heisenberg_hamiltonian(j, 3, 1, 3), PreconditionError);
}

TEST(SwapOperator, BasisAction) {
    const ComplexMatrix s = swap_operator(0, 1, 2);
    // |01> (index 1) -> |10> (index 2); |00> fixed
    EXPECT_EQ(s(2, 1), Complex(1.0));
    EXPECT_EQ(s(1, 1), Complex(0.0));
    EXPECT_EQ(s(0, 0), Complex(1.0));
    EXPECT_TRUE((s * s).approx_equal(ComplexMatrix::identity(4)));
}

TEST(SwapOperator, EqualsPauliDecomposition) {
    const ComplexMatrix expected = (ComplexMatrix::identity(4) + heisenberg_bond(0, 1, 2)) * Complex(0.5);
    EXPECT_TRUE(swap_operator(0, 1, 2).approx_equal(expected, 0.0));
    // Non-adjacent pair inside a larger register.
    const ComplexMatrix far = (ComplexMatrix::identity(16) + heisenberg_bond(0, 3, 4)) * Complex(0.5);
    EXPECT_TRUE(swap_operator(3, 0, 4).approx_equal(far, 1e-15));
}

TEST(SwapOperator, Errors) {
    EXPECT_THROW(swap_operator(1, 1, 2), PreconditionError);
    EXPECT_THROW(swap_operator(0, 2, 2), PreconditionError);
}

TEST(PartialSwap, ZeroIsIdentity) { EXPECT_TRUE(partial_swap(0.0, 0, 1, 2).approx_equal(ComplexMatrix::identity(4))); }

TEST(PartialSwap, HalfPiSwapsWithPhaseI) {
    const DensityMatrix psi = testing::random_pure(1);
    const DensityMatrix phi = testing::random_pure(1);
    const ComplexMatrix p = partial_swap(kHalfPi, 0, 1, 2);
    // i|phi>|psi> has the same projector as |phi>|psi>.
    EXPECT_TRUE(kron(psi, phi).matrix().conjugated_by(p).approx_equal(kron(phi, psi).matrix(), 1e-12));
    EXPECT_TRUE(p.approx_equal(swap_operator(0, 1, 2) * Complex(0.0, 1.0), 1e-15));
}

TEST(PartialSwap, QuarterPiOnOneZero) {
    const ComplexMatrix p = partial_swap(std::numbers::pi / 4, 0, 1, 2);
    const double s = 1.0 / std::numbers::sqrt2;
    // column |10> (index 2) -> (|10> + i|01>)/sqrt2
    EXPECT_NEAR(std::abs(p(2, 2) - Complex(s, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p(1, 2) - Complex(0.0, s)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p(0, 2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p(3, 2)), 0.0, 1e-15);
}

TEST(PartialSwap, RangeErrors) {
    EXPECT_THROW(partial_swap(-0.01, 0, 1, 2), ConfigError);
    EXPECT_THROW(partial_swap(2.0, 0, 1, 2), ConfigError);
    try {
        partial_swap(2.0, 0, 1, 2);
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.parameter(), "eta");
        EXPECT_NE(std::string(e.what()).find("[0, π/2]"), std::string::npos);
    }
}

TEST(PartialSwap, ExponentialFormEquivalence) {
    const ComplexMatrix bond = heisenberg_bond(0, 1, 2);
    for (double eta : uniform_grid(0.0, kHalfPi, 25)) {
        const ComplexMatrix direct = partial_swap(eta, 0, 1, 2);
        const ComplexMatrix via_exp =
            expm_hermitian_generator(bond * Complex(-0.5), eta) * std::exp(Complex(0.0, eta / 2.0));
        EXPECT_LE(direct.max_abs_diff(via_exp), 1e-10) << "eta " << eta;
        EXPECT_LE(direct.unitarity_residual(), 1e-12);
    }
}

TEST(PartialSwap, ConservesPairMagnetisation) {
    for (double eta : {0.0, 0.3, 0.9, kHalfPi}) {
        const ComplexMatrix p = partial_swap(eta, 1, 4, 6);
        const ComplexMatrix z = embedded_pauli(Axis::Z, 1, 6) + embedded_pauli(Axis::Z, 4, 6);
        EXPECT_LE(commutator(p, z).max_abs(), 1e-12);
    }
}

TEST(Depolarising, OmegaZeroIsIdentity) {
    const DensityMatrix rho = random_density(3);
    EXPECT_TRUE(apply_channel(depolarising_channel(0.0, 1, 3), rho).approx_equal(rho));
}

TEST(Depolarising, OmegaOneResetsQubit) {
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density(1);
        EXPECT_TRUE(apply_channel(depolarising_channel(1.0, 0, 1), rho).approx_equal(DensityMatrix::maximally_mixed(1)));
    }
}

TEST(Depolarising, HalfStrengthOnGround) {
    const DensityMatrix out = apply_channel(depolarising_channel(0.5, 0, 1), DensityMatrix::basis(1, 0));
    const std::vector<Complex> d = {0.75, 0.25};
    EXPECT_TRUE(out.matrix().approx_equal(ComplexMatrix::diagonal(d)));
}

TEST(Depolarising, OmegaOneOnProductStateMarginals) {
    const DensityMatrix a = random_density(1);
    const DensityMatrix b = random_density(1);
    const DensityMatrix c = random_density(1);
    const DensityMatrix out = apply_channel(depolarising_channel(1.0, 1, 3), kron(kron(a, b), c));
    EXPECT_TRUE(partial_trace(out, {1}).approx_equal(DensityMatrix::maximally_mixed(1)));
    EXPECT_TRUE(partial_trace(out, {0}).approx_equal(a));
    EXPECT_TRUE(partial_trace(out, {2}).approx_equal(c));
}

TEST(Depolarising, CompletenessCertificate) {
    for (double omega : uniform_grid(0.0, 1.0, 21)) {
        for (std::size_t q = 0; q < 4; ++q) {
            const KrausChannel ch = depolarising_channel(omega, q, 4);
            EXPECT_EQ(ch.ops().size(), 4u);
            EXPECT_TRUE(ch.is_cptp());
            EXPECT_LE(ch.completeness_residual(), 1e-12);
        }
    }
    const KrausChannel broken({ComplexMatrix::identity(2) * Complex(0.9), pauli(Axis::X) * Complex(0.1)});
    EXPECT_FALSE(broken.is_cptp());
}

TEST(Depolarising, RangeErrors) {
    EXPECT_THROW(depolarising_channel(-0.1, 0, 1), ConfigError);
    EXPECT_THROW(depolarising_channel(1.1, 0, 1), ConfigError);
    try {
        depolarising_channel(-0.1, 0, 1);
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("[0, 1]"), std::string::npos);
    }
}

TEST(Depolarising, MatchesConvexForm) {
    for (int trial = 0; trial < 10; ++trial) {
        const double omega = testing::uniform(0.0, 1.0);
        const std::size_t q = static_cast<std::size_t>(trial % 3);
        const DensityMatrix rho = random_density(3);
        const DensityMatrix out = apply_channel(depolarising_channel(omega, q, 3), rho);

        // (1 - omega) rho + omega * (I/2 on qubit q) (x) Tr_q(rho), rebuilt with
        // the qubits in their original order.
        std::vector<std::size_t> others;
        for (std::size_t k = 0; k < 3; ++k) {
            if (k != q) others.push_back(k);
        }
        const DensityMatrix rest = partial_trace(rho, others);
        DensityMatrix reset = kron(DensityMatrix::maximally_mixed(1), rest);  // order: q, others...
        std::vector<std::size_t> order(3);
        // position of original qubit k inside `reset`
        order[q] = 0;
        order[others[0]] = 1;
        order[others[1]] = 2;
        const DensityMatrix reordered = partial_trace(reset, {order[0], order[1], order[2]});
        const ComplexMatrix expected = rho.matrix() * Complex(1.0 - omega) + reordered.matrix() * Complex(omega);
        EXPECT_LE(out.matrix().max_abs_diff(expected), 1e-12);
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_FALSE(out.violation().has_value());
    }
}

TEST(Depolarising, ChannelsOnDistinctQubitsCommute) {
    const DensityMatrix rho = random_density(4);
    const KrausChannel a = depolarising_channel(0.3, 1, 4);
    const KrausChannel b = depolarising_channel(0.8, 3, 4);
    EXPECT_TRUE(apply_channel(b, apply_channel(a, rho)).approx_equal(apply_channel(a, apply_channel(b, rho))));
}

TEST(ApplyChannel, IdentityAndErrors) {
    const DensityMatrix rho = random_density(2);
    const KrausChannel id({ComplexMatrix::identity(4)});
    EXPECT_TRUE(apply_channel(id, rho).approx_equal(rho));
    EXPECT_THROW(apply_channel(depolarising_channel(0.5, 0, 1), rho), PreconditionError);
}

TEST(ModelConfig, Validation) {
    ModelConfig c = ModelConfig::uniform(3, 10.0, 1.0);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.j_chain.size(), 2u);
    EXPECT_TRUE(ModelConfig::uniform(1, 1.0, 1.0).j_chain.empty());

    c.eta = 2.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.eta = kHalfPi;
    EXPECT_NO_THROW(c.validate());
    c.omega = -0.1;
    EXPECT_THROW(c.validate(), ConfigError);
    c.omega = 1.0;
    c.dt = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.dt = 0.01;
    c.j_res = {1.0};
    EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace qcollide
