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

#pragma once

#include <cstddef>

#include "qcollide/errors.hpp"
#include "qcollide/model.hpp"
#include "qcollide/qmatrix.hpp"

namespace qcollide {

/// <10...0| rho |0...01>: coherence between the excitation on the first and
/// on the last site of an N-qubit chain (qubit 0 is the most significant bit).
inline Complex coherence_element(const DensityMatrix& rho_chain) {
    const std::size_t n = rho_chain.num_qubits();
    if (n < 2) throw PreconditionError("coherence_element: need at least 2 chain qubits");
    return rho_chain(std::size_t{1} << (n - 1), 1);
}

/// Tr(rho * sum_q Z_q).
inline double total_z_expectation(const DensityMatrix& rho) {
    const std::size_t n = rho.num_qubits();
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const int ones = __builtin_popcountll(static_cast<unsigned long long>(i));
        acc += rho(i, i).real() * static_cast<double>(static_cast<int>(n) - 2 * ones);
    }
    return acc;
}

}  // namespace qcollide
