// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prints the coupling table of the six-qubit lattice used for the QFT runs.

#include <cstdio>

#include "rvqc/field.hpp"

int main() {
    rvqc::InteractionProfile p{1e8, 1e-8, 1e-4, 7.0};
    const double unit = p.T * p.lambda * p.lambda;
    const auto layout = rvqc::rectangular_lattice(3, 2, 5 * unit, 3 * unit);
    const auto c = rvqc::coupling_matrix(layout, p);
    std::printf("noise scale W = %.6g, bound per layer = %.9f\n", c.noise_scale,
                rvqc::fidelity_lower_bound(p.lambda, layout.size(), c.noise_scale));
    std::printf(" i  j        L      lambda^2 Delta\n");
    for (int i = 0; i < layout.size(); ++i) {
        for (int j = i + 1; j < layout.size(); ++j) {
            std::printf("%2d %2d %10.4g %16.6f\n", i, j, layout.separation(i, j),
                        p.lambda * p.lambda * c.delta(i, j));
        }
    }
}
