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

// Prints the non-Markovianity measure against omega for both models using the
// library API directly.

#include <cstdio>

#include "qcollide/qcollide.hpp"

int main() {
    using namespace qcollide;
    const auto grid = uniform_grid(0.0, 1.0, 11);
    const auto one = sweep_omega(NonMarkovModel::OneByOne, kHalfPi, grid, 20, 200);
    const auto three = sweep_omega(NonMarkovModel::ThreeByThree, kHalfPi, grid, 20);
    std::printf("%8s %14s %14s %14s\n", "omega", "1x1 antipodal", "1x1 random", "3x3 |000>|111>");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::printf("%8.2f %14.6f %14.6f %14.6f\n", grid[i], one[i].n_value, one[i].random_pairs_max.value_or(0.0),
                    three[i].n_value);
    }
}
