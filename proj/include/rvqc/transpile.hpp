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

// Compiles an entangling gate on one chosen qubit pair out of the global
// entangler U_C = exp(-(i lambda^2 / 2) sum_{i<j} Delta_ij Z_i Z_j).
//
// Conjugating U_C by X on a set S of qubits flips the sign of every Z_i Z_j
// term with exactly one end in S. Starting from U^(0) = U_C, the iteration
//   U^(k+1) = X_{M_k} U^(k) X_{M_k} U^(k)
// first takes M_0 = the target pair (which decouples it from everything
// else), then repeatedly halves the remaining qubits into index sets and
// takes M_k = union of the "X" halves. Couplings between different sets
// cancel, couplings inside a set and on the target pair double. After
// K = ceil(log2 N) + 3 iterations only the pair survives:
//   U^(K) = U_pair^(2^(K-1)),  U_pair = exp(-i lambda^2 Delta_pair Z Z),
// at a cost of 2^K uses of U_C.
//
// Every step X_m U_C X_m is diagonal, so a plan is just its list of masks m.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/sim.hpp"
#include "rvqc/types.hpp"

namespace rvqc {

using QubitMask = std::uint64_t;
using QubitPair = std::pair<int, int>;
using PairCounts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

inline int ceil_log2(int n) {
    if (n < 1) throw InvalidArgument("ceil_log2 of a non-positive number");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1)));
}

/// Index sets after one halving round. Labels are strings over {'1', 'X'},
/// one character per round; values are qubit indices in ascending order.
struct IndexPartition {
    int iteration = 0;
    std::map<std::string, std::vector<int>> sets;

    std::size_t max_size() const {
        std::size_t m = 0;
        for (const auto& [label, s] : sets) m = std::max(m, s.size());
        return m;
    }

    /// Qubits in the sets whose label ends in 'X'.
    QubitMask x_mask() const {
        QubitMask m = 0;
        for (const auto& [label, s] : sets) {
            if (!label.empty() && label.back() == 'X') {
                for (int q : s) m |= QubitMask{1} << q;
            }
        }
        return m;
    }
};

struct TranspilePlan {
    int num_qubits = 0;
    QubitPair target_pair{0, 1};
    /// permutation[logical] = physical. The target pair sits at logical N-2, N-1.
    std::vector<int> permutation;
    /// Step s applies X_{steps[s]} U_C X_{steps[s]}; steps run in list order.
    std::vector<QubitMask> steps;
    /// partitions[k-1] holds the index sets of round k.
    std::vector<IndexPartition> partitions;
    int iterations = 0;
    /// U_pair exponent realised by the plan; 0 for an elimination plan.
    std::uint64_t expected_exponent = 0;

    std::uint64_t layer_cost() const { return steps.size(); }
};

/// 2^(ceil(log2 N) + 2)
inline std::uint64_t pair_gate_exponent(int num_qubits) {
    return std::uint64_t{1} << (ceil_log2(num_qubits) + 2);
}

/// Halves every set: the first floor(|s| / 2) indices go to the 'X' child.
inline IndexPartition split_partition(const IndexPartition& parent) {
    IndexPartition child;
    child.iteration = parent.iteration + 1;
    for (const auto& [label, s] : parent.sets) {
        const auto half = static_cast<std::ptrdiff_t>(s.size() / 2);
        child.sets[label + "X"] = std::vector<int>(s.begin(), s.begin() + half);
        child.sets[label + "1"] = std::vector<int>(s.begin() + half, s.end());
    }
    return child;
}

namespace detail {

inline void double_with_mask(std::vector<QubitMask>& steps, QubitMask mask) {
    const auto n = steps.size();
    steps.reserve(2 * n);
    for (std::size_t s = 0; s < n; ++s) steps.push_back(steps[s] ^ mask);
}

}  // namespace detail

inline TranspilePlan pair_gate_plan(int num_qubits, QubitPair target) {
    if (num_qubits < 3) throw InvalidArgument("pair_gate_plan needs at least 3 qubits");
    if (num_qubits > 62) throw InvalidArgument("pair_gate_plan supports at most 62 qubits");
    auto [a, b] = target;
    if (a == b || a < 0 || b < 0 || a >= num_qubits || b >= num_qubits) {
        throw InvalidArgument("invalid target pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    if (a > b) std::swap(a, b);

    TranspilePlan plan;
    plan.num_qubits = num_qubits;
    plan.target_pair = {a, b};
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q) {
        if (q != a && q != b) rest.push_back(q);
    }
    plan.permutation = rest;
    plan.permutation.push_back(a);
    plan.permutation.push_back(b);

    plan.iterations = ceil_log2(num_qubits) + 3;
    plan.expected_exponent = pair_gate_exponent(num_qubits);

    plan.steps = {0};
    detail::double_with_mask(plan.steps, (QubitMask{1} << a) | (QubitMask{1} << b));
    IndexPartition current;
    current.sets[""] = rest;
    for (int k = 1; k < plan.iterations; ++k) {
        current = split_partition(current);
        plan.partitions.push_back(current);
        detail::double_with_mask(plan.steps, current.x_mask());
    }
    return plan;
}

/// Plan that cancels the entangler completely: the pair-gate plan for
/// (N-2, N-1) followed by its copy conjugated with X on qubit N-1.
inline TranspilePlan eliminate_pair_gate_plan(int num_qubits) {
    auto plan = pair_gate_plan(num_qubits, {num_qubits - 2, num_qubits - 1});
    detail::double_with_mask(plan.steps, QubitMask{1} << (num_qubits - 1));
    plan.expected_exponent = 0;
    return plan;
}

/// max{N / 2^k + 2 - 1 / 2^(k-1), 1}: bound on the largest index set after round k.
inline double max_set_size_bound(int num_qubits, int k) {
    if (k < 1) throw InvalidArgument("max_set_size_bound needs k >= 1");
    const double n = num_qubits;
    return std::max(n / std::ldexp(1.0, k) + 2.0 - 1.0 / std::ldexp(1.0, k - 1), 1.0);
}

/// Diagonal of the composed plan unitary.
inline std::vector<complex> plan_phases(const TranspilePlan& plan, std::size_t num_steps, const CouplingMatrix& coupling,
                                        double lambda) {
    if (coupling.size() != plan.num_qubits) throw DimensionMismatch("coupling size does not match plan");
    if (plan.num_qubits > 2 * max_density_qubits) throw InvalidArgument("dense plan execution supports at most 20 qubits");
    const auto base = entangler_phases(coupling, lambda);
    std::vector<complex> phases(base.size(), complex{1.0, 0.0});
    for (std::size_t s = 0; s < num_steps; ++s) {
        const QubitMask m = plan.steps.at(s);
        for (BasisIndex b = 0; b < phases.size(); ++b) phases[b] *= base[b ^ m];
    }
    return phases;
}

/// Dense unitary of the whole plan.
inline ComplexMatrix execute_plan(const TranspilePlan& plan, const CouplingMatrix& coupling, double lambda) {
    if (plan.num_qubits > max_density_qubits) throw InvalidArgument("execute_plan supports at most 10 qubits");
    const auto phases = plan_phases(plan, plan.steps.size(), coupling, lambda);
    ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(phases.size()), static_cast<Eigen::Index>(phases.size()));
    for (std::size_t b = 0; b < phases.size(); ++b) u(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = phases[b];
    return u;
}

/// exp(-i lambda^2 exponent Delta Z_i Z_j) embedded in N qubits.
inline ComplexMatrix expected_pair_unitary(double delta_pair_value, double lambda, std::uint64_t exponent, int num_qubits,
                                           QubitPair pair) {
    check_qubit(pair.first, num_qubits);
    check_qubit(pair.second, num_qubits);
    if (num_qubits > max_density_qubits) throw InvalidArgument("expected_pair_unitary supports at most 10 qubits");
    const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
    const double angle = lambda * lambda * static_cast<double>(exponent) * delta_pair_value;
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const auto bi = static_cast<BasisIndex>(b);
        u(b, b) = std::polar(1.0, -angle * spin(bi, pair.first) * spin(bi, pair.second));
    }
    return u;
}

/// Pair angle exponent * lambda^2 * Delta_pair.
inline double pair_angle(double delta_pair_value, double lambda, int num_qubits) {
    return static_cast<double>(pair_gate_exponent(num_qubits)) * lambda * lambda * delta_pair_value;
}

/// Distance from `angle` to the nearest multiple of `period`.
inline double distance_to_multiple(double angle, double period) {
    return std::fabs(angle - period * std::round(angle / period));
}

/// True iff 2^(ceil(log2 N)+2) lambda^2 Delta is further than `margin` from every multiple of pi.
inline bool check_entangling_angle(double delta_pair_value, double lambda, int num_qubits, double margin) {
    if (!(margin > 0.0)) throw InvalidArgument("margin must be positive");
    return distance_to_multiple(pair_angle(delta_pair_value, lambda, num_qubits), std::numbers::pi) > margin;
}

/// max_ab |U_ab - e^{i phi} V_ab| with phi = arg tr(V^dagger U).
inline double phase_aligned_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) throw DimensionMismatch("phase_aligned_distance: shape mismatch");
    const complex overlap = (v.adjoint() * u).trace();
    const complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : complex{1.0, 0.0};
    return (u - phase * v).cwiseAbs().maxCoeff();
}

/// Number of operator-Schmidt coefficients of a two-qubit gate above `tol`.
/// 1 means a product of local gates.
inline int operator_schmidt_rank(const Eigen::Matrix4cd& gate, double tol = 1e-9) {
    // Realignment R[(a a'), (b b')] = U[(a b), (a' b')], first qubit = high bit.
    Eigen::Matrix4cd r;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) r(2 * a + ap, 2 * b + bp) = gate(2 * a + b, 2 * ap + bp);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(r);
    int rank = 0;
    for (int k = 0; k < 4; ++k) rank += svd.singularValues()(k) > tol ? 1 : 0;
    return rank;
}

/// 4x4 block of `u` acting on (first, second) with every other qubit in |0>.
/// Row/column index 2 * bit(first) + bit(second).
inline Eigen::Matrix4cd pair_block(const ComplexMatrix& u, QubitPair pair) {
    Eigen::Matrix4cd g;
    auto index = [&](int k) {
        return static_cast<Eigen::Index>((((k >> 1) & 1) << pair.first) | ((k & 1) << pair.second));
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = u(index(r), index(c));
    return g;
}

/// Integer multiplicities n_ij such that the first `num_steps` steps compose to
/// exp(-(i lambda^2 / 2) sum_{i<j} n_ij Delta_ij Z_i Z_j). Upper triangle only.
inline PairCounts symbolic_exponents(const TranspilePlan& plan, std::size_t num_steps) {
    const int n = plan.num_qubits;
    PairCounts counts = PairCounts::Zero(n, n);
    for (std::size_t s = 0; s < num_steps; ++s) {
        const QubitMask m = plan.steps.at(s);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) counts(i, j) += (((m >> i) ^ (m >> j)) & 1U) ? -1 : 1;
        }
    }
    return counts;
}

/// Checks, on the symbolic exponents, that after every round k the composed
/// unitary U^(k) only couples the target pair and pairs sharing an index set
/// of round k-1, each with multiplicity exactly 2^k. Returns an empty string on
/// success, otherwise a description of the first violation.
inline std::string verify_locality(const TranspilePlan& plan) {
    IndexPartition previous;
    {
        std::vector<int> rest;
        for (int q = 0; q < plan.num_qubits; ++q) {
            if (q != plan.target_pair.first && q != plan.target_pair.second) rest.push_back(q);
        }
        previous.sets[""] = rest;
    }
    const int rounds = std::min<int>(plan.iterations, static_cast<int>(std::bit_width(plan.steps.size())) - 1);
    for (int k = 1; k <= rounds; ++k) {
        const auto counts = symbolic_exponents(plan, std::size_t{1} << k);
        std::vector<int> set_of(plan.num_qubits, -1);
        int id = 0;
        for (const auto& [label, s] : previous.sets) {
            for (int q : s) set_of[q] = id;
            ++id;
        }
        const std::int64_t full = std::int64_t{1} << k;
        for (int i = 0; i < plan.num_qubits; ++i) {
            for (int j = i + 1; j < plan.num_qubits; ++j) {
                const bool is_pair = QubitPair{i, j} == plan.target_pair;
                const bool shared = set_of[i] >= 0 && set_of[i] == set_of[j];
                const std::int64_t want = (is_pair || shared) ? full : 0;
                if (counts(i, j) != want) {
                    std::ostringstream msg;
                    msg << "round " << k << ": pair (" << i << ", " << j << ") has multiplicity " << counts(i, j)
                        << ", expected " << want;
                    return msg.str();
                }
            }
        }
        if (k - 1 < static_cast<int>(plan.partitions.size())) previous = plan.partitions[k - 1];
    }
    return {};
}

inline void write_plan_text(std::ostream& os, const TranspilePlan& plan) {
    os << "# pair-gate plan: each step applies X(mask) U_C X(mask)\n";
    os << "num_qubits=" << plan.num_qubits << "\n";
    os << "target_pair=" << plan.target_pair.first << "," << plan.target_pair.second << "\n";
    os << "exponent=" << plan.expected_exponent << "\n";
    os << "cost=" << plan.layer_cost() << "\n";
    os << "permutation=";
    for (std::size_t i = 0; i < plan.permutation.size(); ++i) os << (i ? "," : "") << plan.permutation[i];
    os << "\n";
    for (QubitMask m : plan.steps) os << "mask=0x" << std::hex << m << std::dec << " ; UC\n";
}

/// Parses the step list and header written by write_plan_text. Partitions are
/// not serialised.
inline TranspilePlan read_plan_text(std::istream& is) {
    TranspilePlan plan;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidArgument("plan text: malformed line '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "num_qubits") {
            plan.num_qubits = std::stoi(value);
        } else if (key == "target_pair") {
            const auto comma = value.find(',');
            plan.target_pair = {std::stoi(value.substr(0, comma)), std::stoi(value.substr(comma + 1))};
        } else if (key == "exponent") {
            plan.expected_exponent = std::stoull(value);
        } else if (key == "cost") {
            // derived from the step count
        } else if (key == "permutation") {
            std::istringstream ps(value);
            std::string tok;
            while (std::getline(ps, tok, ',')) plan.permutation.push_back(std::stoi(tok));
        } else if (key == "mask") {
            const auto semi = value.find(';');
            if (semi == std::string::npos || value.find("UC", semi) == std::string::npos) {
                throw InvalidArgument("plan text: step line must end in '; UC'");
            }
            plan.steps.push_back(std::stoull(value.substr(0, semi), nullptr, 16));
        } else {
            throw InvalidArgument("plan text: unknown key '" + key + "'");
        }
    }
    plan.iterations = plan.steps.empty() ? 0 : static_cast<int>(std::bit_width(plan.steps.size())) - 1;
    return plan;
}

}  // namespace rvqc
