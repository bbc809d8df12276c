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

// Builds the pair-gate plan for qubits (0, 4) of five, runs it and compares
// against the expected two-qubit gate.

#include <cstdio>

#include "rvqc/field.hpp"
#include "rvqc/transpile.hpp"

int main() {
    rvqc::InteractionProfile p{1.0, 1e-3, 0.4, 7.0};
    rvqc::QubitLayout layout;
    for (int k = 0; k < 5; ++k) layout.positions.push_back({1.0 * k + 0.1 * k * k, 0.0, 0.0});
    const auto c = rvqc::coupling_matrix(layout, p);

    const auto plan = rvqc::pair_gate_plan(5, {0, 4});
    const auto u = rvqc::execute_plan(plan, c, p.lambda);
    const auto v = rvqc::expected_pair_unitary(c.delta(0, 4), p.lambda, plan.expected_exponent, 5, {0, 4});
    std::printf("cost %llu, exponent %llu, residual %.3g, schmidt rank %d\n",
                static_cast<unsigned long long>(plan.layer_cost()),
                static_cast<unsigned long long>(plan.expected_exponent), rvqc::phase_aligned_distance(u, v),
                rvqc::operator_schmidt_rank(rvqc::pair_block(u, {0, 4})));
    for (const auto& part : plan.partitions) {
        std::printf("round %d:", part.iteration);
        for (const auto& [label, set] : part.sets) {
            std::printf(" %s{", label.c_str());
            for (std::size_t k = 0; k < set.size(); ++k) std::printf(k ? ",%d" : "%d", set[k]);
            std::printf("}");
        }
        std::printf("\n");
    }
}
