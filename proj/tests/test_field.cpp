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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/field_oracle.hpp"

namespace {

using rvqc::InteractionProfile;

constexpr double pi = std::numbers::pi;

InteractionProfile profile(double T, double sigma, double lambda = 0.0) { return {T, sigma, lambda, 7.0}; }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int k = 0; k < n; ++k) g.push_back(lo * std::pow(hi / lo, k / double(n - 1)));
    return g;
}

TEST(Alpha, Examples) {
    EXPECT_EQ(rvqc::alpha(0.0, 1.0), 1.0);
    EXPECT_NEAR(rvqc::alpha(1.0, 1.0), 1.41421356237309505, 1e-15);
    EXPECT_NEAR(rvqc::alpha(1e-8, 1e8) - 1.0, 0.0, 1e-30);
    EXPECT_GE(rvqc::alpha(3.0, 0.5), 1.0);
}

TEST(WightmanSelf, Examples) {
    EXPECT_NEAR(rvqc::wightman_self(profile(1e8, 1e-8)), 1.0 / (4.0 * pi), 1e-17);
    EXPECT_NEAR(rvqc::wightman_self(profile(1.0, 1.0)), 1.0 / (8.0 * pi), 1e-17);
    EXPECT_EQ(rvqc::wightman_self(profile(0.3, 0.2)), rvqc::wightman_self(profile(0.6, 0.4)));
}

TEST(WightmanPair, ContinuousAtZeroSeparation) {
    for (double sigma : {1e-3, 0.1, 1.0}) {
        const auto p = profile(1.0, sigma);
        EXPECT_NEAR(rvqc::wightman_pair(1e-6, p) / rvqc::wightman_self(p) - 1.0, 0.0, 1e-6);
    }
}

TEST(WightmanPair, NeverExceedsSelfTerm) {
    for (double T : {1e-2, 1.0, 1e8}) {
        for (double s : log_grid(1e-6, 10.0, 8)) {
            for (double l : log_grid(1e-6, 1e3, 25)) {
                const auto p = profile(T, s * T);
                EXPECT_LE(rvqc::wightman_pair(l * T, p), rvqc::wightman_self(p));
                EXPECT_GT(rvqc::wightman_pair(l * T, p), 0.0);
            }
        }
    }
}

TEST(WightmanPair, MatchesOracleAtSeparationT) {
    const auto p = profile(1.0, 1e-6);
    const auto oracle = rvqc::quadrature_oracle_wightman(1.0, p);
    EXPECT_NEAR(rvqc::wightman_pair(1.0, p) / oracle.value - 1.0, 0.0, 1e-4);
}

TEST(WightmanPair, AgreesWithErfiForm) {
    // (T / (4 sqrt(pi) alpha L)) e^{-x^2} erfi(x) with x = L / (2 alpha T)
    const auto p = profile(2.0, 0.5);
    const double a = rvqc::alpha(p.sigma, p.T);
    for (double L : {0.01, 0.3, 1.0, 4.0, 20.0, 100.0}) {
        const double x = L / (2.0 * a * p.T);
        const double direct = p.T / (4.0 * std::sqrt(pi) * a * L) * std::exp(-x * x) * rvqc::special::erfi(x);
        EXPECT_NEAR(rvqc::wightman_pair(L, p) / direct - 1.0, 0.0, 1e-13) << L;
    }
}

TEST(WightmanOracle, SelfTermAtZeroSeparation) {
    const auto p = profile(1.0, 0.7);
    EXPECT_NEAR(rvqc::quadrature_oracle_wightman(0.0, p).value / rvqc::wightman_self(p) - 1.0, 0.0, 1e-10);
}

TEST(DeltaPair, FarFieldLimit) {
    for (double l_over_t : log_grid(1e-7, 1e-3, 9)) {
        for (double s_over_l : log_grid(1e-9, 1e-3, 7)) {
            const double T = 1e8;
            const double L = l_over_t * T;
            const auto p = profile(T, s_over_l * L);
            const double d = rvqc::delta_pair(L, p);
            EXPECT_LE(std::fabs(d * 2.0 * std::sqrt(pi) * L / T + 1.0), 1e-3);
            EXPECT_NEAR(d / rvqc::delta_far_field(L, T) - 1.0, 0.0, 1e-3);
        }
    }
}

TEST(DeltaPair, StrictlyNegative) {
    for (double s : log_grid(1e-6, 10.0, 8)) {
        for (double l : log_grid(1e-4, 10.0, 20)) {
            EXPECT_LT(rvqc::delta_pair(l, profile(1.0, s)), 0.0);
        }
    }
}

TEST(DeltaPair, RejectsZeroSeparation) {
    EXPECT_THROW(rvqc::delta_pair(0.0, profile(1.0, 0.1)), rvqc::InvalidArgument);
    EXPECT_THROW(rvqc::wightman_pair(0.0, profile(1.0, 0.1)), rvqc::InvalidArgument);
}

// 5x5 grid with L/T and sigma/L log-spaced over [1e-4, 1e-1].
TEST(Oracle, ClosedFormsMatchQuadratureGrid) {
    const double T = 1.0;
    for (double l : log_grid(1e-4, 1e-1, 5)) {
        for (double s : log_grid(1e-4, 1e-1, 5)) {
            const double L = l * T;
            const auto p = profile(T, s * L);
            const auto od = rvqc::quadrature_oracle_delta(L, p);
            const auto ow = rvqc::quadrature_oracle_wightman(L, p);
            EXPECT_LT(od.value, 0.0);
            EXPECT_NEAR(rvqc::delta_pair(L, p) / od.value - 1.0, 0.0, 1e-4) << "L/T=" << l << " sigma/L=" << s;
            EXPECT_NEAR(rvqc::wightman_pair(L, p) / ow.value - 1.0, 0.0, 1e-4) << "L/T=" << l << " sigma/L=" << s;
        }
    }
}

TEST(Oracle, FarFieldAgreement) {
    const double T = 1e4, L = 1.0;
    const auto p = profile(T, 1e-4);
    EXPECT_NEAR(rvqc::quadrature_oracle_delta(L, p).value / rvqc::delta_far_field(L, T) - 1.0, 0.0, 1.1e-3);
}

TEST(Oracle, LargeSmearingRegime) {
    // sigma comparable to L and T, away from every asymptotic regime
    for (double L : {0.2, 1.0, 3.0}) {
        const auto p = profile(1.0, 0.8);
        EXPECT_NEAR(rvqc::delta_pair(L, p) / rvqc::quadrature_oracle_delta(L, p).value - 1.0, 0.0, 1e-4);
        EXPECT_NEAR(rvqc::wightman_pair(L, p) / rvqc::quadrature_oracle_wightman(L, p).value - 1.0, 0.0, 1e-4);
    }
}

TEST(CouplingMatrix, SingleQubit) {
    rvqc::QubitLayout layout{{{0.0, 0.0, 0.0}}};
    const auto c = rvqc::coupling_matrix(layout, profile(1.0, 0.01));
    ASSERT_EQ(c.size(), 1);
    EXPECT_EQ(c.delta(0, 0), 0.0);
    EXPECT_EQ(c.noise_scale, rvqc::wightman_self(profile(1.0, 0.01)));
}

TEST(CouplingMatrix, CoincidentPositionsNamed) {
    rvqc::QubitLayout layout{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}}};
    try {
        (void)rvqc::coupling_matrix(layout, profile(1.0, 0.01));
        FAIL() << "expected CoincidentPositions";
    } catch (const rvqc::CoincidentPositions& e) {
        EXPECT_EQ(e.i, 1);
        EXPECT_EQ(e.j, 3);
        EXPECT_NE(std::string(e.what()).find("1 and 3"), std::string::npos);
    }
}

TEST(CouplingMatrix, SixQubitLattice) {
    const double T = 1e8, lambda = 1e-4;
    const double unit = T * lambda * lambda;
    const auto p = profile(T, 1e-8, lambda);
    const auto layout = rvqc::rectangular_lattice(3, 2, 5 * unit, 3 * unit);
    const auto c = rvqc::coupling_matrix(layout, p);
    ASSERT_EQ(c.size(), 6);
    EXPECT_NEAR(c.noise_scale, 1.0 / (4.0 * pi), 1e-17);
    for (int i = 0; i < 6; ++i) {
        EXPECT_EQ(c.delta(i, i), 0.0);
        for (int j = 0; j < 6; ++j) {
            EXPECT_EQ(c.delta(i, j), c.delta(j, i));
            EXPECT_EQ(c.wightman(i, j), c.wightman(j, i));
            EXPECT_LE(std::fabs(c.wightman(i, j)), c.wightman(i, i));
            if (i != j) {
                EXPECT_LT(c.delta(i, j), 0.0);
                EXPECT_EQ(c.delta(i, j), rvqc::delta_pair(layout.separation(i, j), p));
            }
        }
    }
    // nearest neighbours along x (L = 5) and y (L = 3): lambda^2 Delta = -1/(2 sqrt(pi) L) to 1e-12
    EXPECT_NEAR(lambda * lambda * c.delta(0, 1), -1.0 / (10.0 * std::sqrt(pi)), 1e-12);
    EXPECT_NEAR(lambda * lambda * c.delta(0, 3), -1.0 / (6.0 * std::sqrt(pi)), 1e-12);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}) {
        const double g = std::fabs(lambda * lambda * c.delta(i, j));
        EXPECT_GT(g, 1e-2);
        EXPECT_LT(g, 1.0);
    }
}

TEST(CouplingMatrix, PermutationEquivariance) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    rvqc::QubitLayout layout;
    for (int k = 0; k < 5; ++k) layout.positions.push_back({u(gen), u(gen), u(gen)});
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    rvqc::QubitLayout permuted;
    for (int k = 0; k < 5; ++k) permuted.positions.push_back(layout.positions[perm[k]]);
    const auto p = profile(2.0, 0.05);
    const auto a = rvqc::coupling_matrix(layout, p);
    const auto b = rvqc::coupling_matrix(permuted, p);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            EXPECT_EQ(b.delta(i, j), a.delta(perm[i], perm[j]));
            EXPECT_EQ(b.wightman(i, j), a.wightman(perm[i], perm[j]));
        }
    }
}

TEST(FidelityBound, Values) {
    EXPECT_EQ(rvqc::fidelity_lower_bound(0.0, 10, 1.0), 1.0);
    const double f = rvqc::fidelity_lower_bound(1e-4, 100, 1.0 / (4.0 * pi));
    EXPECT_NEAR(f, std::exp(-1e-8 * 1e4 / (2.0 * pi)), 1e-15);
    EXPECT_NEAR(f, 0.999984, 1e-6);
    EXPECT_NEAR(std::pow(f, 100), 0.99841, 1e-5);
}

TEST(FidelityBound, MonotoneInEveryArgument) {
    const double base = rvqc::fidelity_lower_bound(0.01, 5, 0.08);
    EXPECT_LT(rvqc::fidelity_lower_bound(0.02, 5, 0.08), base);
    EXPECT_LT(rvqc::fidelity_lower_bound(0.01, 6, 0.08), base);
    EXPECT_LT(rvqc::fidelity_lower_bound(0.01, 5, 0.09), base);
    EXPECT_THROW(rvqc::fidelity_lower_bound(0.01, 0, 0.08), rvqc::InvalidArgument);
}

TEST(Profile, Validation) {
    EXPECT_THROW(profile(0.0, 1.0).validate(), rvqc::InvalidArgument);
    EXPECT_THROW(profile(1.0, 0.0).validate(), rvqc::InvalidArgument);
    EXPECT_THROW(profile(1.0, 1.0, -1.0).validate(), rvqc::InvalidArgument);
}

}  // namespace
