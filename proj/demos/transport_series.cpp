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

// Coherence between the first and last chain site over 100 iterations, weak
// (eta = 0.4) and strong (eta = 1.2) coupling.

#include <cstdio>

#include "qcollide/qcollide.hpp"

int main() {
    using namespace qcollide;
    const auto omegas = default_omega_grid();
    for (double eta : {0.4, 1.2}) {
        const auto series = evolve_series(eta, omegas, 100);
        std::printf("eta = %.1f\n%6s", eta, "n");
        for (double omega : omegas) std::printf("  omega=%-6.2f", omega);
        std::printf("\n");
        for (std::size_t n = 0; n <= 100; n += 5) {
            std::printf("%6zu", n);
            for (std::size_t k = 0; k < omegas.size(); ++k) std::printf("  %12.6e", series[k * 101 + n].coherence_abs);
            std::printf("\n");
        }
    }
}
