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

#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/rng.hpp"
#include "rvqc/sim.hpp"

namespace {

using rvqc::complex;
using rvqc::ComplexMatrix;
using rvqc::ComplexVector;
using rvqc::CouplingMatrix;
using rvqc::DensityMatrix;
using rvqc::RealMatrix;
using rvqc::StateVector;

constexpr double pi = std::numbers::pi;

StateVector random_state(int n, rvqc::Rng& rng) {
    ComplexVector a(static_cast<Eigen::Index>(rvqc::dimension_of(n)));
    for (auto& x : a) {
        const double re = rng.normal();
        x = complex(re, rng.normal());
    }
    a /= a.norm();
    return {a, n};
}

// Random positions in a box of side `box`, smeared with the given profile.
CouplingMatrix random_coupling(int n, rvqc::Rng& rng, double box = 2.0, double sigma = 0.05) {
    rvqc::QubitLayout layout;
    for (int k = 0; k < n; ++k) layout.positions.push_back({rng.uniform(0, box), rng.uniform(0, box), rng.uniform(0, box)});
    return rvqc::coupling_matrix(layout, {1.0, sigma, 0.0, 7.0});
}

rvqc::CircuitParams random_params(int n, int depth, rvqc::Rng& rng) {
    rvqc::CircuitParams p(n, depth);
    for (double& v : p.values()) v = rng.uniform(-2.0 * pi, 2.0 * pi);
    return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Dense Kronecker construction of a one-qubit gate on `qubit` (qubit 0 = least significant bit).
ComplexMatrix embed(const Eigen::Matrix2cd& g, int qubit, int n) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        const ComplexMatrix f = q == qubit ? ComplexMatrix(g) : ComplexMatrix(ComplexMatrix::Identity(2, 2));
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

Eigen::Matrix2cd pauli(char which) {
    Eigen::Matrix2cd m;
    switch (which) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << 0, complex(0, -1), complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

TEST(Rotation, MatrixIsExponentialOfPauliCombination) {
    rvqc::Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const double t = rng.uniform(-10, 10), vt = rng.uniform(0, pi), vp = rng.uniform(0, 2 * pi);
        const Eigen::Matrix2cd ns = std::sin(vt) * std::cos(vp) * pauli('x') + std::sin(vt) * std::sin(vp) * pauli('y') +
                                    std::cos(vt) * pauli('z');
        const Eigen::Matrix2cd expected = (complex(0, -t) * ns).exp();
        EXPECT_LT((rvqc::rotation_matrix(t, vt, vp) - expected).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(std::abs(rvqc::rotation_matrix(t, vt, vp).determinant() - 1.0), 0.0, 1e-14);
    }
}

TEST(Rotation, Examples) {
    auto s = StateVector::zero(1);
    rvqc::apply_rotation(s, 0, 0.0, 1.0, 2.0);
    EXPECT_EQ(s.amplitudes(0), complex(1.0));

    s = StateVector::zero(1);
    rvqc::apply_rotation(s, 0, pi / 2, 0.0, 0.0);
    EXPECT_NEAR(std::abs(s.amplitudes(0) - complex(0, -1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes(1)), 0.0, 1e-15);

    s = StateVector::zero(1);
    rvqc::apply_rotation(s, 0, pi / 2, pi / 2, 0.0);
    EXPECT_NEAR(std::abs(s.amplitudes(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes(1) - complex(0, -1)), 0.0, 1e-15);
}

TEST(Rotation, IndexOutOfRange) {
    auto s = StateVector::zero(2);
    EXPECT_THROW(rvqc::apply_rotation(s, 2, 1, 1, 1), rvqc::IndexOutOfRange);
    EXPECT_THROW(rvqc::apply_rotation(s, -1, 1, 1, 1), rvqc::IndexOutOfRange);
}

TEST(Rotation, MatchesKroneckerEmbeddingAndPreservesNorm) {
    rvqc::Rng rng(2);
    for (int n = 1; n <= 4; ++n) {
        for (int q = 0; q < n; ++q) {
            auto s = random_state(n, rng);
            const ComplexVector before = s.amplitudes;
            const double t = rng.uniform(-5, 5), vt = rng.uniform(0, pi), vp = rng.uniform(0, 2 * pi);
            rvqc::apply_rotation(s, q, t, vt, vp);
            const ComplexVector expected = embed(rvqc::rotation_matrix(t, vt, vp), q, n) * before;
            EXPECT_LT((s.amplitudes - expected).cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_NEAR(s.norm_squared(), 1.0, 1e-13);
        }
    }
}

TEST(Entangler, ZeroCouplingGivesUnitPhases) {
    rvqc::Rng rng(3);
    const auto c = random_coupling(4, rng);
    for (auto p : rvqc::entangler_phases(c, 0.0)) EXPECT_EQ(p, complex(1.0));
}

TEST(Entangler, TwoQubitPhases) {
    RealMatrix d(2, 2);
    d << 0.0, 0.7, 0.7, 0.0;
    const auto c = CouplingMatrix::from_delta(d);
    const double lambda = 1.3;
    const double phi = lambda * lambda * 0.7 / 2.0;
    const auto ph = rvqc::entangler_phases(c, lambda);
    ASSERT_EQ(ph.size(), 4U);
    EXPECT_NEAR(std::abs(ph[0] - std::polar(1.0, -phi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ph[1] - std::polar(1.0, phi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ph[2] - std::polar(1.0, phi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ph[3] - std::polar(1.0, -phi)), 0.0, 1e-15);
}

TEST(Entangler, GlobalSpinFlipInvariance) {
    rvqc::Rng rng(4);
    for (int n = 2; n <= 6; ++n) {
        const auto c = random_coupling(n, rng);
        const auto ph = rvqc::entangler_phases(c, 0.9);
        const rvqc::BasisIndex all = rvqc::dimension_of(n) - 1;
        for (rvqc::BasisIndex b = 0; b <= all; ++b) {
            EXPECT_NEAR(std::abs(ph[b] - ph[b ^ all]), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(ph[b]), 1.0, 1e-15);
        }
    }
}

TEST(Entangler, MaximallyEntanglesPlusPlus) {
    RealMatrix d(2, 2);
    d << 0.0, pi, pi, 0.0;
    // lambda^2 Delta = pi/2 gives exp(-i (pi/4) ZZ), the maximally entangling point
    const auto c = CouplingMatrix::from_delta(d * 0.5);
    ComplexVector plus(4);
    plus.setConstant(0.5);
    StateVector s{plus, 2};
    rvqc::apply_entangler(s, c, 1.0);
    // reduced state of qubit 0
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int other = 0; other < 2; ++other) rho(a, b) += s.amplitudes(a + 2 * other) * std::conj(s.amplitudes(b + 2 * other));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    double entropy = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double p = es.eigenvalues()(k);
        if (p > 1e-15) entropy -= p * std::log2(p);
    }
    EXPECT_NEAR(entropy, 1.0, 1e-9);
}

// With lambda^2 Delta = pi, exp(-i (pi/2) ZZ) = -i Z x Z is a product gate,
// so |++> stays unentangled.
TEST(Entangler, HalfTurnIsLocal) {
    RealMatrix d(2, 2);
    d << 0.0, pi, pi, 0.0;
    const auto c = CouplingMatrix::from_delta(d);
    ComplexVector plus(4);
    plus.setConstant(0.5);
    StateVector s{plus, 2};
    rvqc::apply_entangler(s, c, 1.0);
    // amplitudes factorise: a00 a11 = a01 a10
    EXPECT_NEAR(std::abs(s.amplitudes(0) * s.amplitudes(3) - s.amplitudes(1) * s.amplitudes(2)), 0.0, 1e-15);
}

TEST(Entangler, DensityDiagonalUnchangedAndConjugateRestores) {
    rvqc::Rng rng(5);
    for (int n = 1; n <= 5; ++n) {
        const auto c = random_coupling(n, rng);
        auto rho = DensityMatrix::from_state(random_state(n, rng));
        const ComplexMatrix before = rho.entries;
        rvqc::apply_entangler(rho, c, 1.7);
        EXPECT_LT((rho.entries.diagonal() - before.diagonal()).cwiseAbs().maxCoeff(), 1e-15);
        // lambda^2 enters, so conjugating the coupling undoes the gate
        auto inverse = c;
        inverse.delta = -c.delta;
        rvqc::apply_entangler(rho, inverse, 1.7);
        EXPECT_LT(max_abs(rho.entries - before), 1e-14);
    }
}

TEST(Entangler, DimensionMismatch) {
    rvqc::Rng rng(6);
    const auto c = random_coupling(3, rng);
    auto s = StateVector::zero(2);
    EXPECT_THROW(rvqc::apply_entangler(s, c, 1.0), rvqc::DimensionMismatch);
}

TEST(Dephasing, ZeroCouplingIsIdentity) {
    rvqc::Rng rng(7);
    const auto c = random_coupling(3, rng);
    auto rho = DensityMatrix::from_state(random_state(3, rng));
    const ComplexMatrix before = rho.entries;
    rvqc::apply_dephasing(rho, c, 0.0);
    EXPECT_EQ(max_abs(rho.entries - before), 0.0);
}

TEST(Dephasing, SingleQubitPlusState) {
    rvqc::Rng rng(8);
    const auto c = random_coupling(1, rng);
    ComplexVector plus(2);
    plus.setConstant(1.0 / std::sqrt(2.0));
    auto rho = DensityMatrix::from_state({plus, 1});
    const double lambda = 0.8;
    rvqc::apply_dephasing(rho, c, lambda);
    const double factor = std::exp(-2.0 * lambda * lambda * c.wightman(0, 0));
    EXPECT_NEAR(rho.entries(0, 1).real(), 0.5 * factor, 1e-15);
    EXPECT_NEAR(rho.entries(1, 0).real(), 0.5 * factor, 1e-15);
    EXPECT_NEAR(std::abs(rho.entries(0, 0) - complex(0.5)), 0.0, 1e-15);
}

TEST(Dephasing, ExponentMatchesDirectQuadraticForm) {
    rvqc::Rng rng(9);
    const int n = 4;
    const auto c = random_coupling(n, rng);
    for (rvqc::BasisIndex b = 0; b < 16; ++b) {
        for (rvqc::BasisIndex bp = 0; bp < 16; ++bp) {
            double direct = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    direct += (rvqc::spin(b, i) - rvqc::spin(bp, i)) * (rvqc::spin(b, j) - rvqc::spin(bp, j)) *
                              c.wightman(i, j);
            EXPECT_NEAR(rvqc::dephasing_exponent(b, bp, c.wightman), direct, 1e-14);
            if (b == bp) {
                EXPECT_EQ(rvqc::dephasing_exponent(b, bp, c.wightman), 0.0);
            }
        }
    }
}

TEST(Channel, ZeroCouplingIsIdentity) {
    rvqc::Rng rng(10);
    const auto c = random_coupling(3, rng);
    auto rho = DensityMatrix::from_state(random_state(3, rng));
    const ComplexMatrix before = rho.entries;
    rvqc::apply_channel(rho, c, 0.0);
    EXPECT_EQ(max_abs(rho.entries - before), 0.0);
}

TEST(Channel, CptpOnRandomInputs) {
    rvqc::Rng rng(11);
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 4;
        const auto c = random_coupling(n, rng);
        auto rho = DensityMatrix::from_state(random_state(n, rng));
        rvqc::apply_channel(rho, c, rng.uniform(0.0, 3.0));
        EXPECT_NEAR(rho.trace_real(), 1.0, 1e-10);
        EXPECT_NEAR(std::abs(rho.entries.trace().imag()), 0.0, 1e-10);
        EXPECT_LT(max_abs(rho.entries - rho.entries.adjoint()), 1e-10);
        EXPECT_GE(rvqc::min_eigenvalue(rho), -1e-10);
    }
}

TEST(Channel, EntanglerAndDephasingCommute) {
    rvqc::Rng rng(12);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + k % 5;
        const auto c = random_coupling(n, rng);
        const double lambda = rng.uniform(0.0, 2.0);
        auto a = DensityMatrix::from_state(random_state(n, rng));
        auto b = a;
        rvqc::apply_dephasing(a, c, lambda);
        rvqc::apply_entangler(a, c, lambda);
        rvqc::apply_entangler(b, c, lambda);
        rvqc::apply_dephasing(b, c, lambda);
        EXPECT_LT(max_abs(a.entries - b.entries), 1e-12);
    }
}

TEST(Channel, FidelityAgainstUnitaryImageRespectsBound) {
    rvqc::Rng rng(13);
    for (int k = 0; k < 60; ++k) {
        const int n = 1 + k % 4;
        const auto c = random_coupling(n, rng);
        const double lambda = rng.uniform(0.0, 2.0);
        const auto psi = random_state(n, rng);
        auto rho = DensityMatrix::from_state(psi);
        rvqc::apply_channel(rho, c, lambda);
        auto ideal = psi;
        rvqc::apply_entangler(ideal, c, lambda);
        EXPECT_GE(rvqc::state_fidelity(rho, ideal), rvqc::fidelity_lower_bound(lambda, n, c.noise_scale) - 1e-12);
    }
}

// Holding lambda^2 Delta fixed, the channel approaches conjugation by U_C as lambda -> 0.
TEST(Channel, NoiselessLimit) {
    rvqc::Rng rng(14);
    const int n = 3;
    const auto base = random_coupling(n, rng);
    const auto psi = random_state(n, rng);
    const double g = 1.0;  // lambda^2 Delta scale held fixed
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-2, 1e-3, 1e-4}) {
        auto c = base;
        c.delta = base.delta * (g / (lambda * lambda));
        auto rho = DensityMatrix::from_state(psi);
        rvqc::apply_channel(rho, c, lambda);
        auto ideal = DensityMatrix::from_state(psi);
        rvqc::apply_entangler(ideal, c, lambda);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.entries - ideal.entries, Eigen::EigenvaluesOnly);
        const double trace_distance = 0.5 * es.eigenvalues().cwiseAbs().sum();
        EXPECT_LT(trace_distance, previous);
        previous = trace_distance;
    }
    EXPECT_LT(previous, 1e-6);
}

TEST(ExactFidelity, BasisStatesAndZeroCoupling) {
    rvqc::Rng rng(15);
    const auto c = random_coupling(4, rng);
    for (rvqc::BasisIndex b = 0; b < 16; ++b) EXPECT_EQ(rvqc::exact_channel_fidelity(StateVector::basis(4, b), c, 2.0), 1.0);
    EXPECT_NEAR(rvqc::exact_channel_fidelity(random_state(4, rng), c, 0.0), 1.0, 1e-14);
}

TEST(ExactFidelity, MatchesDensityMatrixPath) {
    rvqc::Rng rng(16);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 6;
        const auto c = random_coupling(n, rng);
        const double lambda = rng.uniform(0.0, 2.0);
        const auto psi = random_state(n, rng);
        auto rho = DensityMatrix::from_state(psi);
        rvqc::apply_dephasing(rho, c, lambda);
        const double f = rvqc::exact_channel_fidelity(psi, c, lambda);
        EXPECT_NEAR(f, rvqc::state_fidelity(rho, psi), 1e-12);
        EXPECT_GT(f, 0.0);
        EXPECT_LE(f, 1.0 + 1e-14);
    }
}

TEST(ExactFidelity, SixQubitLatticeRespectsBound) {
    const double T = 1e8, lambda = 1e-4, unit = T * lambda * lambda;
    const auto c = rvqc::coupling_matrix(rvqc::rectangular_lattice(3, 2, 5 * unit, 3 * unit), {T, 1e-8, lambda, 7.0});
    const double bound = std::exp(-2.0 * lambda * lambda * 36.0 * c.noise_scale);
    rvqc::Rng rng(17);
    for (int k = 0; k < 100; ++k) EXPECT_GE(rvqc::exact_channel_fidelity(random_state(6, rng), c, lambda), bound);
}

TEST(CircuitUnitary, Examples) {
    rvqc::Rng rng(18);
    const auto c = random_coupling(3, rng);
    rvqc::CircuitParams zero(3, 1);
    EXPECT_EQ(max_abs(rvqc::circuit_unitary(zero, c, 0.0) - ComplexMatrix::Identity(8, 8)), 0.0);

    const auto p = random_params(3, 1, rng);
    ComplexMatrix kron = ComplexMatrix::Identity(1, 1);
    for (int q = 2; q >= 0; --q) kron = Eigen::kroneckerProduct(kron, ComplexMatrix(rvqc::rotation_matrix(p.at(0, q)))).eval();
    EXPECT_LT(max_abs(rvqc::circuit_unitary(p, c, 0.0) - kron), 1e-14);
}

TEST(CircuitUnitary, LayerOrderAndUnitarity) {
    rvqc::Rng rng(19);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 5, depth = 1 + k % 4;
        const auto c = random_coupling(n, rng);
        const double lambda = rng.uniform(0.0, 3.0);
        const auto p = random_params(n, depth, rng);
        const auto u = rvqc::circuit_unitary(p, c, lambda);
        EXPECT_LE(rvqc::unitarity_residual(u), 1e-10);
        // dense reference: prod_l U_C U_para(l)
        const auto dim = static_cast<Eigen::Index>(rvqc::dimension_of(n));
        ComplexMatrix uc = ComplexMatrix::Zero(dim, dim);
        const auto ph = rvqc::entangler_phases(c, lambda);
        for (Eigen::Index b = 0; b < dim; ++b) uc(b, b) = ph[static_cast<std::size_t>(b)];
        ComplexMatrix ref = ComplexMatrix::Identity(dim, dim);
        for (int l = 0; l < depth; ++l) {
            for (int q = 0; q < n; ++q) ref = (embed(rvqc::rotation_matrix(p.at(l, q)), q, n) * ref).eval();
            ref = (uc * ref).eval();
        }
        EXPECT_LT(max_abs(u - ref), 1e-12);
    }
}

TEST(CircuitUnitary, NoisyCircuitReducesToUnitaryWithoutNoise) {
    rvqc::Rng rng(20);
    auto c = random_coupling(3, rng);
    c.wightman.setZero();
    const auto p = random_params(3, 3, rng);
    const auto psi = random_state(3, rng);
    auto rho = DensityMatrix::from_state(psi);
    rvqc::apply_noisy_circuit(rho, p, c, 1.1);
    const ComplexVector out = rvqc::circuit_unitary(p, c, 1.1) * psi.amplitudes;
    EXPECT_NEAR(rvqc::state_fidelity(rho, StateVector{out, 3}), 1.0, 1e-12);
}

TEST(StateFidelity, Examples) {
    rvqc::Rng rng(21);
    const auto psi = random_state(3, rng);
    EXPECT_NEAR(rvqc::state_fidelity(psi, psi), 1.0, 1e-14);
    EXPECT_EQ(rvqc::state_fidelity(StateVector::basis(2, 1), StateVector::basis(2, 2)), 0.0);
    ComplexVector plus(2);
    plus.setConstant(1.0 / std::sqrt(2.0));
    EXPECT_NEAR(rvqc::state_fidelity(StateVector::zero(1), StateVector{plus, 1}), 0.5, 1e-15);
    EXPECT_THROW(rvqc::state_fidelity(StateVector::zero(1), StateVector::zero(2)), rvqc::DimensionMismatch);
}

TEST(Params, ShapeAndLayers) {
    EXPECT_THROW(rvqc::CircuitParams(0, 1), rvqc::InvalidArgument);
    EXPECT_THROW(rvqc::CircuitParams(1, 0), rvqc::InvalidArgument);
    std::vector<rvqc::LayerParams> layers = {{{1, 2, 3}, {4, 5, 6}}, {{7, 8, 9}, {10, 11, 12}}};
    const auto p = rvqc::CircuitParams::from_layers(layers);
    EXPECT_EQ(p.depth(), 2);
    EXPECT_EQ(p.num_qubits(), 2);
    EXPECT_EQ(p.at(1, 0).vartheta, 8.0);
    EXPECT_EQ(p.values()[9], 10.0);
    layers[1].pop_back();
    EXPECT_THROW(rvqc::CircuitParams::from_layers(layers), rvqc::DimensionMismatch);
}

}  // namespace
