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

// Closed-form self-checks run by `qcollide validate`.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qcollide/model.hpp"
#include "qcollide/nonmarkov.hpp"
#include "qcollide/protocol.hpp"
#include "qcollide/qmatrix.hpp"
#include "qcollide/transport.hpp"

namespace qcollide {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Operator builders under test. Replacing one lets a test confirm that the
/// corresponding check catches a broken implementation.
struct ValidationHooks {
    std::function<ComplexMatrix(double, std::size_t, std::size_t, std::size_t)> partial_swap = qcollide::partial_swap;
    std::function<KrausChannel(double, std::size_t, std::size_t)> depolarising = qcollide::depolarising_channel;
};

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline ValidationCheck check_within(std::string name, double worst, double tol) {
    return {std::move(name), worst <= tol, "max deviation " + sci(worst) + " (tolerance " + sci(tol) + ")"};
}

inline ValidationCheck check_swap_alternation() {
    const ProtocolEngine engine(one_by_one_config(kHalfPi, 0.0));
    const auto series =
        paired_trajectory_distances(engine, DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1), 20);
    double worst = 0.0;
    for (std::size_t n = 0; n < series.size(); ++n) {
        worst = std::max(worst, std::abs(series[n] - (n % 2 == 0 ? 1.0 : 0.0)));
    }
    return check_within("full-swap alternation (1x1, eta=pi/2, omega=0)", worst, 1e-10);
}

inline ValidationCheck check_geometric_law() {
    double worst = 0.0;
    for (double omega : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const ProtocolEngine engine(one_by_one_config(kHalfPi, omega));
        const auto series =
            paired_trajectory_distances(engine, DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1), 20);
        double expected = 0.0;
        for (int k = 1; k <= 10; ++k) expected += std::pow(1.0 - omega, k);
        worst = std::max(worst, std::abs(blp_measure(series) - expected));
    }
    return check_within("geometric non-Markovianity law (1x1, 20 steps)", worst, 1e-9);
}

inline ValidationCheck check_decoupling() {
    const ModelConfig base = transport_defaults();
    const ComplexMatrix h_chain = heisenberg_hamiltonian(base.j_chain, 3, 0, 3);
    const DensityMatrix init = excitation_state(3);
    double worst = 0.0;
    for (double omega : default_omega_grid()) {
        ModelConfig c = base;
        c.eta = 0.0;
        c.omega = omega;
        const ProtocolEngine engine(c);
        const auto records = run(engine, init, 100);
        for (std::size_t n : {std::size_t{2}, std::size_t{100}}) {
            const ComplexMatrix u = expm_hermitian_generator(h_chain, c.dt * static_cast<double>(n));
            worst = std::max(worst, records[n].chain_state.matrix().max_abs_diff(init.matrix().conjugated_by(u)));
        }
    }
    return check_within("eta=0 decoupling matches closed chain evolution", worst, 1e-10);
}

inline ValidationCheck check_partial_swap_exponential(const ValidationHooks& hooks) {
    const ComplexMatrix bond = heisenberg_bond(0, 1, 2);
    double worst = 0.0;
    for (double eta : uniform_grid(0.0, kHalfPi, 17)) {
        const ComplexMatrix via_exp =
            expm_hermitian_generator(bond * Complex(-0.5), eta) * std::exp(Complex(0.0, eta / 2.0));
        worst = std::max(worst, hooks.partial_swap(eta, 0, 1, 2).max_abs_diff(via_exp));
    }
    return check_within("partial swap equals exponential of exchange coupling", worst, 1e-10);
}

inline ValidationCheck check_cptp(const ValidationHooks& hooks) {
    double worst = 0.0;
    for (double omega : uniform_grid(0.0, 1.0, 11)) {
        for (std::size_t q = 3; q < 6; ++q) worst = std::max(worst, hooks.depolarising(omega, q, 6).completeness_residual());
    }
    return check_within("depolarising Kraus completeness", worst, kDefaultPolicy.completeness_tolerance);
}

inline ValidationCheck check_markovian_limit() {
    ModelConfig c = transport_defaults();
    c.eta = 0.9;
    c.omega = 1.0;
    const ProtocolEngine engine(c);
    const FreshReservoirEngine fresh(c);
    DensityMatrix joint = engine.initial_state(excitation_state(3));
    DensityMatrix chain = excitation_state(3);
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
        joint = engine.step(joint);
        chain = fresh.step_chain(chain);
        worst = std::max(worst, engine.chain_marginal(joint).matrix().max_abs_diff(chain.matrix()));
    }
    return check_within("omega=1 matches fresh-reservoir evolution", worst, 1e-10);
}

}  // namespace detail

inline std::vector<ValidationCheck> validate(const ValidationHooks& hooks = {}) {
    std::vector<ValidationCheck> out;
    auto guarded = [&out](const char* name, auto&& check) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };
    guarded("full-swap alternation", [] { return detail::check_swap_alternation(); });
    guarded("geometric law", [] { return detail::check_geometric_law(); });
    guarded("eta=0 decoupling", [] { return detail::check_decoupling(); });
    guarded("partial swap exponential", [&] { return detail::check_partial_swap_exponential(hooks); });
    guarded("depolarising completeness", [&] { return detail::check_cptp(hooks); });
    guarded("markovian limit", [] { return detail::check_markovian_limit(); });
    return out;
}

inline bool all_passed(const std::vector<ValidationCheck>& checks) {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

inline void print_report(const std::vector<ValidationCheck>& checks, std::ostream& os) {
    for (const auto& c : checks) os << (c.passed ? "PASS  " : "FAIL  ") << c.name << " : " << c.detail << '\n';
}

}  // namespace qcollide
