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
#include <vector>

#include <gtest/gtest.h>

#include "qcollide/protocol.hpp"
#include "qcollide/transport.hpp"
#include "test_support.hpp"

namespace qcollide {
namespace {

ModelConfig config(std::size_t n, double eta, double omega) {
    ModelConfig c = n == 1 ? ModelConfig::uniform(1, 0.0, 0.0) : ModelConfig::uniform(n, 10.0, 1.0);
    c.eta = eta;
    c.omega = omega;
    c.dt = 0.01;
    return c;
}

TEST(InitialJointState, SingleSite) {
    const DensityMatrix joint = initial_joint_state(DensityMatrix::basis(1, 0));
    const std::vector<Complex> d = {0.5, 0.5, 0.0, 0.0};
    EXPECT_TRUE(joint.matrix().approx_equal(ComplexMatrix::diagonal(d)));
}

TEST(InitialJointState, TraceAndReservoirMarginal) {
    const DensityMatrix chain = testing::random_density(3);
    const DensityMatrix joint = initial_joint_state(chain);
    EXPECT_NEAR(joint.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(partial_trace(joint, {3, 4, 5}).approx_equal(DensityMatrix::maximally_mixed(3)));
    EXPECT_TRUE(partial_trace(joint, {0, 1, 2}).approx_equal(chain));
}

TEST(ProtocolEngine, PrecomputedOperatorsAreConsistent) {
    const ProtocolEngine engine(config(3, 0.7, 0.4));
    EXPECT_EQ(engine.exchange_unitaries().size(), 3u);
    EXPECT_EQ(engine.depolarising_channels().size(), 3u);
    EXPECT_LE(engine.exchange_unitary().unitarity_residual(), 1e-10);
    EXPECT_LE(engine.reservoir_propagator().unitarity_residual(), 1e-10);
    EXPECT_LE(engine.chain_propagator().unitarity_residual(), 1e-10);
    EXPECT_LE(commutator(engine.reservoir_propagator(), engine.chain_propagator()).max_abs(), 1e-10);
    // Partial swaps on disjoint pairs commute.
    const auto& p = engine.exchange_unitaries();
    EXPECT_LE(commutator(p[0], p[2]).max_abs(), 1e-12);
}

TEST(ProtocolEngine, RejectsInvalidConfig) {
    EXPECT_THROW(ProtocolEngine(config(3, 2.0, 0.0)), ConfigError);
    EXPECT_THROW(ProtocolEngine(config(3, 0.0, 1.5)), ConfigError);
    const ProtocolEngine engine(config(1, 0.3, 0.3));
    EXPECT_THROW(engine.step(DensityMatrix::maximally_mixed(3)), PreconditionError);
    EXPECT_THROW(engine.initial_state(DensityMatrix::maximally_mixed(2)), PreconditionError);
}

TEST(Step, EtaZeroDecouplesEnvironment) {
    const DensityMatrix init = testing::random_density(3);
    for (double omega : {0.0, 0.6, 1.0}) {
        const ProtocolEngine engine(config(3, 0.0, omega));
        const std::vector<double> j = {10.0, 10.0};
        const ComplexMatrix h = heisenberg_hamiltonian(j, 3, 0, 3);
        const auto records = run(engine, init, 5);
        for (const auto& rec : records) {
            const ComplexMatrix u = testing::taylor_propagator(h, 0.01 * static_cast<double>(rec.step));
            EXPECT_LE(rec.chain_state.matrix().max_abs_diff(init.matrix().conjugated_by(u)), 1e-10);
        }
    }
}

TEST(Step, FullSwapAlternationWithoutLoss) {
    const ProtocolEngine engine(config(1, kHalfPi, 0.0));
    const auto records = run(engine, DensityMatrix::basis(1, 1), 6);
    for (const auto& rec : records) {
        const DensityMatrix expected = rec.step % 2 == 0 ? DensityMatrix::basis(1, 1) : DensityMatrix::maximally_mixed(1);
        EXPECT_TRUE(rec.chain_state.approx_equal(expected)) << "step " << rec.step;
    }
}

TEST(Step, FullSwapWithResetStaysMixed) {
    const ProtocolEngine engine(config(1, kHalfPi, 1.0));
    const auto records = run(engine, DensityMatrix::basis(1, 1), 6);
    for (std::size_t n = 1; n < records.size(); ++n) {
        EXPECT_TRUE(records[n].chain_state.approx_equal(DensityMatrix::maximally_mixed(1)));
    }
}

TEST(Run, ZeroStepsReturnsInitialRecord) {
    const ProtocolEngine engine(config(3, 0.5, 0.5));
    const DensityMatrix init = excitation_state(3);
    const auto records = run(engine, init, 0);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].step, 0u);
    EXPECT_TRUE(records[0].chain_state.approx_equal(init));
    ASSERT_TRUE(records[0].coherence_1N.has_value());
    EXPECT_EQ(*records[0].coherence_1N, Complex(0.0));
}

TEST(Run, RecordsSatisfyInvariants) {
    const ProtocolEngine engine(config(3, 1.1, 0.3));
    for (const auto& rec : run(engine, testing::random_density(3), 8)) {
        EXPECT_FALSE(rec.chain_state.violation().has_value());
        ASSERT_TRUE(rec.coherence_1N.has_value());
        EXPECT_LE(std::abs(*rec.coherence_1N), 0.5 + 1e-12);
    }
    const ProtocolEngine single(config(1, 1.1, 0.3));
    EXPECT_FALSE(run(single, DensityMatrix::basis(1, 0), 1)[1].coherence_1N.has_value());
}

TEST(Step, UnitaryAtOmegaZeroWithPureReservoir) {
    const ProtocolEngine engine(config(3, 0.8, 0.0));
    DensityMatrix joint = initial_joint_state(testing::random_pure(3), testing::random_pure(3));
    EXPECT_NEAR(joint.purity(), 1.0, 1e-12);
    for (int n = 0; n < 10; ++n) {
        joint = engine.step(joint);
        EXPECT_NEAR(joint.purity(), 1.0, 1e-10);
    }
}

TEST(Step, TotalMagnetisationConservedOnlyWithoutDepolarisation) {
    const DensityMatrix init = initial_joint_state(excitation_state(3));
    const double z0 = total_z_expectation(init);
    {
        const ProtocolEngine engine(config(3, 0.9, 0.0));
        DensityMatrix joint = init;
        for (int n = 0; n < 10; ++n) {
            joint = engine.step(joint);
            EXPECT_NEAR(total_z_expectation(joint), z0, 1e-9);
        }
    }
    {
        const ProtocolEngine engine(config(3, 0.9, 0.5));
        DensityMatrix joint = init;
        double worst = 0.0;
        for (int n = 0; n < 10; ++n) {
            joint = engine.step(joint);
            worst = std::max(worst, std::abs(total_z_expectation(joint) - z0));
        }
        EXPECT_GT(worst, 1e-3);
    }
}

TEST(Step, TransferPhasesCommute) {
    const ProtocolEngine engine(config(3, 0.6, 0.4));
    DensityMatrix rho = initial_joint_state(testing::random_density(3));
    rho = engine.apply_phase(Phase::Exchange, rho);
    rho = engine.apply_phase(Phase::Depolarisation, rho);
    const DensityMatrix a =
        engine.apply_phase(Phase::ChainTransfer, engine.apply_phase(Phase::ReservoirTransfer, rho));
    const DensityMatrix b =
        engine.apply_phase(Phase::ReservoirTransfer, engine.apply_phase(Phase::ChainTransfer, rho));
    EXPECT_TRUE(a.approx_equal(b));
}

TEST(Step, EqualsPhasesInOrder) {
    const ProtocolEngine engine(config(2, 0.6, 0.4));
    const DensityMatrix rho = initial_joint_state(testing::random_density(2));
    DensityMatrix manual = rho;
    for (Phase p : kPhaseOrder) manual = engine.apply_phase(p, manual);
    EXPECT_TRUE(engine.step(rho).approx_equal(manual));
}

TEST(Step, MarkovianLimitMatchesFreshReservoir) {
    for (double eta : {0.3, 1.0, kHalfPi}) {
        const ModelConfig c = config(3, eta, 1.0);
        const ProtocolEngine engine(c);
        const FreshReservoirEngine fresh(c);
        const DensityMatrix init = testing::random_density(3);
        DensityMatrix joint = engine.initial_state(init);
        DensityMatrix chain = init;
        for (int n = 0; n < 8; ++n) {
            joint = engine.step(joint);
            chain = fresh.step_chain(chain);
            EXPECT_LE(engine.chain_marginal(joint).matrix().max_abs_diff(chain.matrix()), 1e-10);
        }
    }
}

TEST(Step, DistanceContractsForFullyMarkovianChannel) {
    // omega = 1, eta = pi/2: each step is a CPTP map of the chain alone, so the
    // trace distance cannot grow.
    const ProtocolEngine engine(config(1, kHalfPi, 1.0));
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix a = engine.initial_state(testing::random_density(1));
        DensityMatrix b = engine.initial_state(testing::random_density(1));
        double previous = trace_distance(engine.chain_marginal(a), engine.chain_marginal(b));
        for (int n = 0; n < 6; ++n) {
            a = engine.step(a);
            b = engine.step(b);
            const double d = trace_distance(engine.chain_marginal(a), engine.chain_marginal(b));
            EXPECT_LE(d, previous + 1e-12);
            previous = d;
        }
    }
}

TEST(Step, IntegrityErrorNamesPhase) {
    const ProtocolEngine engine(config(1, 0.4, 0.2));
    // Hermitian with unit trace but not positive: caught after the last phase.
    const DensityMatrix bad = DensityMatrix::unchecked(ComplexMatrix::diagonal(std::vector<Complex>{1.5, -0.5, 0.0, 0.0}));
    try {
        engine.step(bad);
        FAIL() << "expected NumericalIntegrityError";
    } catch (const NumericalIntegrityError& e) {
        EXPECT_EQ(e.phase(), "chain-transfer");
    }
    // Trace violation is caught at the first phase.
    const DensityMatrix scaled = DensityMatrix::unchecked(ComplexMatrix::identity(4) * Complex(0.5));
    try {
        engine.step(scaled);
        FAIL() << "expected NumericalIntegrityError";
    } catch (const NumericalIntegrityError& e) {
        EXPECT_EQ(e.phase(), "exchange");
    }
    // Checks can be switched off.
    const ProtocolEngine unchecked(config(1, 0.4, 0.2), EngineOptions{false, {}});
    EXPECT_NO_THROW(unchecked.step(scaled));
}

}  // namespace
}  // namespace qcollide
