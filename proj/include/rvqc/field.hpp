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

// Field-mediated couplings between Gaussian-smeared qubits in Minkowski
// vacuum, for a massless scalar field.
//
// Each qubit couples through the smearing
//   Lambda_i(t, x) = exp(-(t - t_c)^2 / 2T^2) exp(-|x - x_i|^2 / 2 sigma^2) / (2 pi sigma^2)^{3/2}.
// With alpha = sqrt(1 + sigma^2 / T^2) the smeared two-point data are
//   W_ii  = 1 / (4 pi alpha^2)
//   W_ij  = T / (4 sqrt(pi) alpha L) exp(-L^2 / 4 alpha^2 T^2) erfi(L / 2 alpha T)
//   Delta = -T / (2 sqrt(pi) alpha L) exp(-L^2 / 4 alpha^2 T^2) erf(L / 2 alpha sigma)
// and the commutator term E(Lambda_i, Lambda_j) vanishes because the
// interaction regions differ only by a spatial shift. Integrals run over all
// time; the finite scheduling window only bounds when the gate happens.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rvqc/error.hpp"
#include "rvqc/special_functions.hpp"
#include "rvqc/types.hpp"

namespace rvqc {

using Position = std::array<double, 3>;

struct InteractionProfile {
    double T = 1.0;       // temporal width of the switching
    double sigma = 1e-3;  // spatial smearing width
    double lambda = 0.0;  // coupling constant
    double t_center = 7.0;

    void validate() const {
        if (!(T > 0.0)) throw InvalidArgument("interaction profile: T must be positive");
        if (!(sigma > 0.0)) throw InvalidArgument("interaction profile: sigma must be positive");
        if (!(lambda >= 0.0)) throw InvalidArgument("interaction profile: lambda must be non-negative");
    }
};

struct QubitLayout {
    std::vector<Position> positions;

    int size() const { return static_cast<int>(positions.size()); }

    double separation(int i, int j) const {
        const auto& a = positions.at(i);
        const auto& b = positions.at(j);
        return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    }

    /// Throws CoincidentPositions naming the first offending pair.
    void validate() const {
        for (int i = 0; i < size(); ++i) {
            for (int j = i + 1; j < size(); ++j) {
                if (!(separation(i, j) > 0.0)) {
                    throw CoincidentPositions("qubits " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " occupy the same position",
                                              i, j);
                }
            }
        }
    }
};

/// nx-by-ny rectangular lattice in the z = 0 plane. Qubit k sits at
/// (dx * (k % nx), dy * (k / nx), 0).
inline QubitLayout rectangular_lattice(int nx, int ny, double dx, double dy) {
    if (nx < 1 || ny < 1) throw InvalidArgument("lattice dimensions must be positive");
    QubitLayout layout;
    for (int k = 0; k < nx * ny; ++k) {
        layout.positions.push_back({dx * (k % nx), dy * (k / nx), 0.0});
    }
    return layout;
}

struct CouplingMatrix {
    RealMatrix delta;     // symmetric, zero diagonal
    RealMatrix wightman;  // symmetric, W_ii >= |W_ij|
    double noise_scale = 0.0;

    int size() const { return static_cast<int>(delta.rows()); }

    /// Coupling with the given entangling phases and no field noise. Used where
    /// only the unitary part matters.
    static CouplingMatrix from_delta(const RealMatrix& delta) {
        if (delta.rows() != delta.cols()) throw DimensionMismatch("delta must be square");
        CouplingMatrix c;
        c.delta = 0.5 * (delta + delta.transpose());
        c.delta.diagonal().setZero();
        c.wightman = RealMatrix::Zero(delta.rows(), delta.cols());
        return c;
    }
};

inline double alpha(double sigma, double T) { return std::sqrt(1.0 + (sigma / T) * (sigma / T)); }

inline double wightman_self(const InteractionProfile& p) {
    const double a = alpha(p.sigma, p.T);
    return 1.0 / (4.0 * std::numbers::pi * a * a);
}

/// Smeared Wightman function between two qubits at separation L > 0.
///
/// The exp(-x^2) erfi(x) product is evaluated as (2 / sqrt(pi)) D(x), which is
/// the same quantity without the intermediate overflow for large x.
inline double wightman_pair(double L, const InteractionProfile& p) {
    if (!(L > 0.0)) throw InvalidArgument("wightman_pair requires L > 0");
    const double a = alpha(p.sigma, p.T);
    const double x = L / (2.0 * a * p.T);
    return p.T * special::dawson(x) / (2.0 * std::numbers::pi * a * L);
}

/// Symmetrised retarded propagator Delta_ij between qubits at separation L > 0.
inline double delta_pair(double L, const InteractionProfile& p) {
    if (!(L > 0.0)) throw InvalidArgument("delta_pair requires L > 0");
    const double a = alpha(p.sigma, p.T);
    const double u = L / (2.0 * a * p.T);
    return -p.T / (2.0 * std::sqrt(std::numbers::pi) * a * L) * std::exp(-u * u) *
           special::erf(L / (2.0 * a * p.sigma));
}

/// The sigma << L << T limit, -T / (2 sqrt(pi) L).
inline double delta_far_field(double L, double T) {
    return -T * std::numbers::inv_sqrtpi / (2.0 * L);
}

inline CouplingMatrix coupling_matrix(const QubitLayout& layout, const InteractionProfile& profile) {
    profile.validate();
    layout.validate();
    const int n = layout.size();
    CouplingMatrix c;
    c.delta = RealMatrix::Zero(n, n);
    c.wightman = RealMatrix::Zero(n, n);
    const double self = wightman_self(profile);
    for (int i = 0; i < n; ++i) {
        c.wightman(i, i) = self;
        for (int j = i + 1; j < n; ++j) {
            const double L = layout.separation(i, j);
            c.delta(i, j) = c.delta(j, i) = delta_pair(L, profile);
            c.wightman(i, j) = c.wightman(j, i) = wightman_pair(L, profile);
        }
    }
    c.noise_scale = n > 0 ? c.wightman.diagonal().cwiseAbs().maxCoeff() : 0.0;
    return c;
}

/// Lower bound exp(-2 lambda^2 N^2 W) on the fidelity between the field channel
/// and its unitary part, for any pure input.
inline double fidelity_lower_bound(double lambda, int num_qubits, double noise_scale) {
    if (num_qubits < 1) throw InvalidArgument("fidelity bound needs at least one qubit");
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
    const double n = num_qubits;
    return std::exp(-2.0 * lambda * lambda * n * n * noise_scale);
}

}  // namespace rvqc
