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

namespace qcollide {

/// Every numeric tolerance used by the library, in one place. Tests and the
/// library read the same defaults so a check never disagrees with itself.
struct NumericPolicy {
    double entry_tolerance = 1e-12;         // per-entry matrix equality
    double hermiticity_tolerance = 1e-10;   // ||M - M^dag||_max
    double trace_tolerance = 1e-10;         // |Tr(rho) - 1|
    double positivity_tolerance = 1e-10;    // smallest eigenvalue >= -tol
    double unitarity_tolerance = 1e-10;     // ||U^dag U - I||_max
    double completeness_tolerance = 1e-12;  // ||sum K^dag K - I||_max
    std::size_t max_dim = std::size_t{1} << 16;
};

inline constexpr NumericPolicy kDefaultPolicy{};

}  // namespace qcollide
