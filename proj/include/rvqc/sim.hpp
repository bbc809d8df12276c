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

// Dense state-vector and density-matrix simulation of the layered circuit:
// parallel single-qubit rotations exp(-i theta n . sigma), the global
// diagonal entangler U_C = exp(-(i lambda^2 / 2) sum_{i<j} Delta_ij Z_i Z_j)
// and the field-induced dephasing channel.
//
// Basis convention: qubit i is bit i of the basis index counted from the
// least significant bit, and its Z eigenvalue (spin) is +1 for bit 0.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/types.hpp"

namespace rvqc {

inline constexpr int max_statevector_qubits = 20;
inline constexpr int max_density_qubits = 10;

struct RotationParams {
    double theta = 0.0;
    double vartheta = 0.0;
    double varphi = 0.0;
};

using LayerParams = std::vector<RotationParams>;

/// Rotation triples for `depth` layers of `num_qubits` qubits, stored
/// contiguously as (layer, qubit, {theta, vartheta, varphi}).
class CircuitParams {
  public:
    CircuitParams() = default;
    CircuitParams(int num_qubits, int depth)
        : num_qubits_(num_qubits), depth_(depth), values_(static_cast<std::size_t>(3 * num_qubits * depth), 0.0) {
        if (num_qubits < 1 || depth < 1) throw InvalidArgument("circuit needs at least one qubit and one layer");
    }

    static CircuitParams from_layers(const std::vector<LayerParams>& layers) {
        if (layers.empty() || layers.front().empty()) throw InvalidArgument("circuit needs at least one layer");
        CircuitParams p(static_cast<int>(layers.front().size()), static_cast<int>(layers.size()));
        for (int l = 0; l < p.depth(); ++l) {
            if (static_cast<int>(layers[l].size()) != p.num_qubits()) {
                throw DimensionMismatch("all layers must act on the same number of qubits");
            }
            for (int q = 0; q < p.num_qubits(); ++q) p.set(l, q, layers[l][q]);
        }
        return p;
    }

    int num_qubits() const { return num_qubits_; }
    int depth() const { return depth_; }
    std::size_t size() const { return values_.size(); }

    RotationParams at(int layer, int qubit) const {
        const auto k = index(layer, qubit);
        return {values_[k], values_[k + 1], values_[k + 2]};
    }
    void set(int layer, int qubit, RotationParams r) {
        const auto k = index(layer, qubit);
        values_[k] = r.theta;
        values_[k + 1] = r.vartheta;
        values_[k + 2] = r.varphi;
    }
    LayerParams layer(int l) const {
        LayerParams out;
        for (int q = 0; q < num_qubits_; ++q) out.push_back(at(l, q));
        return out;
    }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    bool operator==(const CircuitParams&) const = default;

  private:
    std::size_t index(int layer, int qubit) const {
        return 3 * (static_cast<std::size_t>(layer) * num_qubits_ + qubit);
    }

    int num_qubits_ = 0;
    int depth_ = 0;
    std::vector<double> values_;
};

struct StateVector {
    ComplexVector amplitudes;
    int num_qubits = 0;

    /// |0...0>
    static StateVector zero(int n) {
        if (n < 1 || n > max_statevector_qubits) throw InvalidArgument("state vector supports 1..20 qubits");
        StateVector s{ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n))), n};
        s.amplitudes(0) = 1.0;
        return s;
    }

    static StateVector basis(int n, BasisIndex b) {
        auto s = zero(n);
        if (b >= dimension_of(n)) throw IndexOutOfRange("basis index out of range");
        s.amplitudes(0) = 0.0;
        s.amplitudes(static_cast<Eigen::Index>(b)) = 1.0;
        return s;
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    static StateVector from_amplitudes(ComplexVector amps) {
        int n = 0;
        while (dimension_of(n) < static_cast<BasisIndex>(amps.size())) ++n;
        if (dimension_of(n) != static_cast<BasisIndex>(amps.size()) || n < 1) {
            throw DimensionMismatch("amplitude count must be a power of two >= 2");
        }
        return {std::move(amps), n};
    }

    double norm_squared() const { return amplitudes.squaredNorm(); }
};

struct DensityMatrix {
    ComplexMatrix entries;
    int num_qubits = 0;

    static DensityMatrix from_state(const StateVector& psi) {
        if (psi.num_qubits > max_density_qubits) throw InvalidArgument("density matrix supports at most 10 qubits");
        return {psi.amplitudes * psi.amplitudes.adjoint(), psi.num_qubits};
    }

    double trace_real() const { return entries.trace().real(); }
};

/// 2x2 matrix cos(theta) I - i sin(theta) n . sigma with
/// n = (sin vt cos vp, sin vt sin vp, cos vt).
inline Eigen::Matrix2cd rotation_matrix(double theta, double vartheta, double varphi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double nx = std::sin(vartheta) * std::cos(varphi);
    const double ny = std::sin(vartheta) * std::sin(varphi);
    const double nz = std::cos(vartheta);
    const complex i{0.0, 1.0};
    Eigen::Matrix2cd u;
    u(0, 0) = complex(c, -s * nz);
    u(0, 1) = -i * s * complex(nx, -ny);
    u(1, 0) = -i * s * complex(nx, ny);
    u(1, 1) = complex(c, s * nz);
    return u;
}

inline Eigen::Matrix2cd rotation_matrix(const RotationParams& r) {
    return rotation_matrix(r.theta, r.vartheta, r.varphi);
}

namespace kernels {

// Plain complex product. std::complex operator* routes through a NaN-recovery
// libcall that dominates the inner loops; for finite inputs the result is the same.
inline complex mul(complex a, complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Left-multiplies every column of the column-major block `data` (rows x cols)
/// by the one-qubit gate `g` acting on `qubit`.
inline void apply_one_qubit(complex* data, Eigen::Index rows, Eigen::Index cols, int qubit,
                            const Eigen::Matrix2cd& g) {
    const Eigen::Index stride = Eigen::Index{1} << qubit;
    const complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
        complex* col = data + c * rows;
        for (Eigen::Index base = 0; base < rows; base += 2 * stride) {
            for (Eigen::Index k = base; k < base + stride; ++k) {
                const complex a = col[k];
                const complex b = col[k + stride];
                col[k] = mul(g00, a) + mul(g01, b);
                col[k + stride] = mul(g10, a) + mul(g11, b);
            }
        }
    }
}

inline void scale_rows(complex* data, Eigen::Index rows, Eigen::Index cols, const std::vector<complex>& phases) {
    for (Eigen::Index c = 0; c < cols; ++c) {
        complex* col = data + c * rows;
        for (Eigen::Index r = 0; r < rows; ++r) col[r] = mul(col[r], phases[static_cast<std::size_t>(r)]);
    }
}

}  // namespace kernels

inline void check_qubit(int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw IndexOutOfRange("qubit index " + std::to_string(qubit) + " out of range for " +
                              std::to_string(num_qubits) + " qubits");
    }
}

inline StateVector& apply_rotation(StateVector& state, int qubit, double theta, double vartheta, double varphi) {
    check_qubit(qubit, state.num_qubits);
    kernels::apply_one_qubit(state.amplitudes.data(), state.amplitudes.size(), 1, qubit,
                             rotation_matrix(theta, vartheta, varphi));
    return state;
}

/// rho -> U rho U^dagger for a rotation on one qubit.
inline DensityMatrix& apply_rotation(DensityMatrix& rho, int qubit, double theta, double vartheta, double varphi) {
    check_qubit(qubit, rho.num_qubits);
    const auto g = rotation_matrix(theta, vartheta, varphi);
    auto& m = rho.entries;
    kernels::apply_one_qubit(m.data(), m.rows(), m.cols(), qubit, g);
    m.adjointInPlace();
    kernels::apply_one_qubit(m.data(), m.rows(), m.cols(), qubit, g);
    m.adjointInPlace();
    return rho;
}

/// sum_{i<j} Delta_ij mu_i(b) mu_j(b) for every basis index b.
inline std::vector<double> ising_energies(const RealMatrix& delta) {
    const int n = static_cast<int>(delta.rows());
    const BasisIndex dim = dimension_of(n);
    std::vector<double> energy(dim, 0.0);
    for (BasisIndex b = 0; b < dim; ++b) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) e += delta(i, j) * spin(b, i) * spin(b, j);
        }
        energy[b] = e;
    }
    return energy;
}

/// Diagonal of U_C: exp(-(i lambda^2 / 2) sum_{i<j} Delta_ij mu_i mu_j).
inline std::vector<complex> entangler_phases(const CouplingMatrix& coupling, double lambda) {
    const auto energy = ising_energies(coupling.delta);
    const double k = 0.5 * lambda * lambda;
    std::vector<complex> phases(energy.size());
    for (std::size_t b = 0; b < energy.size(); ++b) phases[b] = std::polar(1.0, -k * energy[b]);
    return phases;
}

inline StateVector& apply_entangler(StateVector& state, const CouplingMatrix& coupling, double lambda) {
    if (coupling.size() != state.num_qubits) throw DimensionMismatch("coupling size does not match state");
    const auto phases = entangler_phases(coupling, lambda);
    kernels::scale_rows(state.amplitudes.data(), state.amplitudes.size(), 1, phases);
    return state;
}

inline DensityMatrix& apply_entangler(DensityMatrix& rho, const CouplingMatrix& coupling, double lambda) {
    if (coupling.size() != rho.num_qubits) throw DimensionMismatch("coupling size does not match density matrix");
    const auto phases = entangler_phases(coupling, lambda);
    auto& m = rho.entries;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const complex right = std::conj(phases[static_cast<std::size_t>(c)]);
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) *= phases[static_cast<std::size_t>(r)] * right;
    }
    return rho;
}

/// ||sum_i (mu_i - mu'_i) Lambda_i||^2 = sum_ij (mu_i - mu'_i)(mu_j - mu'_j) W_ij.
inline double dephasing_exponent(BasisIndex b, BasisIndex bp, const RealMatrix& wightman) {
    const BasisIndex diff = b ^ bp;
    if (diff == 0) return 0.0;
    const int n = static_cast<int>(wightman.rows());
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!((diff >> i) & 1U)) continue;
        const double di = 2.0 * spin(b, i);
        sum += di * di * wightman(i, i);
        for (int j = i + 1; j < n; ++j) {
            if (!((diff >> j) & 1U)) continue;
            sum += 2.0 * di * (2.0 * spin(b, j)) * wightman(i, j);
        }
    }
    return sum;
}

/// Decay factors of the dephasing channel, as a 2^N x 2^N real matrix.
inline RealMatrix dephasing_factors(const CouplingMatrix& coupling, double lambda) {
    const int n = coupling.size();
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    const double k = 0.5 * lambda * lambda;
    RealMatrix f(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            f(r, c) = std::exp(-k * dephasing_exponent(static_cast<BasisIndex>(r), static_cast<BasisIndex>(c),
                                                       coupling.wightman));
        }
    }
    return f;
}

inline DensityMatrix& apply_dephasing(DensityMatrix& rho, const CouplingMatrix& coupling, double lambda) {
    if (coupling.size() != rho.num_qubits) throw DimensionMismatch("coupling size does not match density matrix");
    rho.entries.array() *= dephasing_factors(coupling, lambda).cast<complex>().array();
    return rho;
}

/// Full field channel: dephasing followed by conjugation with U_C.
inline DensityMatrix& apply_channel(DensityMatrix& rho, const CouplingMatrix& coupling, double lambda) {
    apply_dephasing(rho, coupling, lambda);
    return apply_entangler(rho, coupling, lambda);
}

/// <psi| E_phi(|psi><psi|) |psi> as the closed-form double sum over basis pairs.
inline double exact_channel_fidelity(const StateVector& psi, const CouplingMatrix& coupling, double lambda) {
    if (coupling.size() != psi.num_qubits) throw DimensionMismatch("coupling size does not match state");
    const BasisIndex dim = dimension_of(psi.num_qubits);
    const double k = 0.5 * lambda * lambda;
    std::vector<double> prob(dim);
    for (BasisIndex b = 0; b < dim; ++b) prob[b] = std::norm(psi.amplitudes(static_cast<Eigen::Index>(b)));
    double f = 0.0;
    for (BasisIndex b = 0; b < dim; ++b) {
        if (prob[b] == 0.0) continue;
        double row = prob[b];  // b' = b term
        for (BasisIndex bp = 0; bp < dim; ++bp) {
            if (bp == b) continue;
            row += std::exp(-k * dephasing_exponent(b, bp, coupling.wightman)) * prob[bp];
        }
        f += prob[b] * row;
    }
    return f;
}

inline double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits) throw DimensionMismatch("state_fidelity: dimension mismatch");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

/// <psi| rho |psi>
inline double state_fidelity(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.num_qubits != psi.num_qubits) throw DimensionMismatch("state_fidelity: dimension mismatch");
    return psi.amplitudes.dot(rho.entries * psi.amplitudes).real();
}

/// prod_l U_C U_para(l), rotations first in every layer.
inline ComplexMatrix circuit_unitary(const CircuitParams& params, const CouplingMatrix& coupling, double lambda) {
    const int n = params.num_qubits();
    if (coupling.size() != n) throw DimensionMismatch("circuit and coupling sizes differ");
    if (n > max_statevector_qubits / 2) throw InvalidArgument("circuit_unitary supports at most 10 qubits");
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    const auto phases = entangler_phases(coupling, lambda);
    for (int l = 0; l < params.depth(); ++l) {
        for (int q = 0; q < n; ++q) kernels::apply_one_qubit(u.data(), dim, dim, q, rotation_matrix(params.at(l, q)));
        kernels::scale_rows(u.data(), dim, dim, phases);
    }
    return u;
}

/// Runs the circuit on a density matrix with the full noisy channel in place
/// of every U_C.
inline DensityMatrix& apply_noisy_circuit(DensityMatrix& rho, const CircuitParams& params,
                                          const CouplingMatrix& coupling, double lambda) {
    if (coupling.size() != rho.num_qubits || params.num_qubits() != rho.num_qubits) {
        throw DimensionMismatch("circuit, coupling and state sizes differ");
    }
    for (int l = 0; l < params.depth(); ++l) {
        for (int q = 0; q < rho.num_qubits; ++q) {
            const auto r = params.at(l, q);
            apply_rotation(rho, q, r.theta, r.vartheta, r.varphi);
        }
        apply_channel(rho, coupling, lambda);
    }
    return rho;
}

/// max |(U^dagger U - I)_{ab}|
inline double unitarity_residual(const ComplexMatrix& u) {
    const auto dim = u.rows();
    return (u.adjoint() * u - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of the Hermitian part of rho.
inline double min_eigenvalue(const DensityMatrix& rho) {
    const ComplexMatrix h = 0.5 * (rho.entries + rho.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace rvqc
