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

// Training the layered ansatz prod_l U_C U_para(l) towards a target unitary
// with the scaled Hilbert-Schmidt loss and Adam.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "rvqc/adam.hpp"
#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/rng.hpp"
#include "rvqc/sim.hpp"
#include "rvqc/types.hpp"

namespace rvqc {

/// Entry (j, k) = exp(2 pi i j k / 2^N) / sqrt(2^N).
inline ComplexMatrix qft_unitary(int num_qubits) {
    if (num_qubits < 1 || num_qubits > max_density_qubits) throw InvalidArgument("qft_unitary supports 1..10 qubits");
    const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexMatrix u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            const auto jk = (j * k) % dim;
            u(j, k) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(jk) / static_cast<double>(dim));
        }
    }
    return u;
}

/// Divisor of the squared Frobenius distance.
enum class LossNormalization {
    hilbert_dimension,  // 2^N
    qubit_count,        // N
};

inline double loss_divisor(LossNormalization norm, int num_qubits) {
    return norm == LossNormalization::qubit_count ? static_cast<double>(num_qubits)
                                                  : static_cast<double>(dimension_of(num_qubits));
}

/// (1 / divisor) sum_ab |u_ab - v_ab|^2
inline double hs_loss(const ComplexMatrix& model, const ComplexMatrix& target, int num_qubits,
                      LossNormalization norm = LossNormalization::hilbert_dimension) {
    if (model.rows() != target.rows() || model.cols() != target.cols()) {
        throw DimensionMismatch("hs_loss: unitaries have different shapes");
    }
    if (num_qubits < 1) throw InvalidArgument("hs_loss: num_qubits must be positive");
    return (model - target).squaredNorm() / loss_divisor(norm, num_qubits);
}

/// Smallest loss reachable by any determinant-one model: the ansatz lives in
/// SU(2^N), so a target with det V = e^{i chi} sits at least
/// min_k 2^N |1 - e^{i (chi + 2 pi k) / 2^N}|^2 / divisor away from it.
inline double special_unitary_loss_floor(const ComplexMatrix& target, int num_qubits,
                                         LossNormalization norm = LossNormalization::hilbert_dimension) {
    const double d = static_cast<double>(target.rows());
    const double chi = std::arg(target.determinant());
    const double step = 2.0 * std::numbers::pi / d;
    // distance of chi / d to the nearest multiple of 2 pi / d
    const double r = std::remainder(chi / d, step);
    return d * (2.0 - 2.0 * std::cos(r)) / loss_divisor(norm, num_qubits);
}

struct LossAndGradient {
    double loss = 0.0;
    CircuitParams gradient;
    ComplexMatrix unitary;
};

namespace detail {

/// Derivatives of the rotation with respect to (theta, vartheta, varphi).
inline std::array<Eigen::Matrix2cd, 3> rotation_derivatives(const RotationParams& r) {
    const complex i{0.0, 1.0};
    const double c = std::cos(r.theta), s = std::sin(r.theta);
    const double st = std::sin(r.vartheta), ct = std::cos(r.vartheta);
    const double sp = std::sin(r.varphi), cp = std::cos(r.varphi);
    auto pauli_dot = [&](double x, double y, double z) {
        Eigen::Matrix2cd m;
        m << complex(z, 0.0), complex(x, -y), complex(x, y), complex(-z, 0.0);
        return m;
    };
    std::array<Eigen::Matrix2cd, 3> d;
    d[0] = -s * Eigen::Matrix2cd::Identity() - i * c * pauli_dot(st * cp, st * sp, ct);
    d[1] = -i * s * pauli_dot(ct * cp, ct * sp, -st);
    d[2] = -i * s * pauli_dot(-st * sp, st * cp, 0.0);
    return d;
}

/// S_ab = sum_{rest, c} conj(M[(rest, a), c]) Z[(rest, b), c] for bit a, b of `qubit`.
inline Eigen::Matrix2cd qubit_overlap(const ComplexMatrix& m, const ComplexMatrix& z, int qubit) {
    const Eigen::Index rows = m.rows();
    const Eigen::Index stride = Eigen::Index{1} << qubit;
    complex s00{}, s01{}, s10{}, s11{};
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const complex* mc = m.data() + c * rows;
        const complex* zc = z.data() + c * rows;
        for (Eigen::Index base = 0; base < rows; base += 2 * stride) {
            for (Eigen::Index k = base; k < base + stride; ++k) {
                const complex m0 = std::conj(mc[k]), m1 = std::conj(mc[k + stride]);
                const complex z0 = zc[k], z1 = zc[k + stride];
                s00 += kernels::mul(m0, z0);
                s01 += kernels::mul(m0, z1);
                s10 += kernels::mul(m1, z0);
                s11 += kernels::mul(m1, z1);
            }
        }
    }
    Eigen::Matrix2cd s;
    s << s00, s01, s10, s11;
    return s;
}

}  // namespace detail

/// Loss of circuit_unitary(params) against `target` and its exact gradient by
/// reverse accumulation through the layer product.
inline LossAndGradient loss_and_gradient(const CircuitParams& params, const CouplingMatrix& coupling, double lambda,
                                         const ComplexMatrix& target,
                                         LossNormalization norm = LossNormalization::hilbert_dimension) {
    const int n = params.num_qubits();
    const int depth = params.depth();
    if (coupling.size() != n) throw DimensionMismatch("circuit and coupling sizes differ");
    if (n > max_density_qubits) throw InvalidArgument("loss_and_gradient supports at most 10 qubits");
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    if (target.rows() != dim || target.cols() != dim) throw DimensionMismatch("target has the wrong dimension");

    const auto phases = entangler_phases(coupling, lambda);
    std::vector<complex> conj_phases(phases.size());
    std::transform(phases.begin(), phases.end(), conj_phases.begin(), [](complex p) { return std::conj(p); });

    // after_rotations[l] = U_para(l) U_C U_para(l-1) ... U_C U_para(0)
    std::vector<ComplexMatrix> after_rotations(static_cast<std::size_t>(depth));
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (int l = 0; l < depth; ++l) {
        for (int q = 0; q < n; ++q) kernels::apply_one_qubit(u.data(), dim, dim, q, rotation_matrix(params.at(l, q)));
        after_rotations[static_cast<std::size_t>(l)] = u;
        kernels::scale_rows(u.data(), dim, dim, phases);
    }

    LossAndGradient out;
    const double divisor = loss_divisor(norm, n);
    out.loss = (u - target).squaredNorm() / divisor;
    out.gradient = CircuitParams(n, depth);
    auto grad = out.gradient.values();

    // m = (everything after the rotations of layer l)^dagger (U - V)
    ComplexMatrix m = u - target;
    const double scale = 2.0 / divisor;
    for (int l = depth - 1; l >= 0; --l) {
        kernels::scale_rows(m.data(), dim, dim, conj_phases);
        const auto& z = after_rotations[static_cast<std::size_t>(l)];
        for (int q = 0; q < n; ++q) {
            const auto r = params.at(l, q);
            const Eigen::Matrix2cd rot = rotation_matrix(r);
            const Eigen::Matrix2cd s = detail::qubit_overlap(m, z, q);
            const auto d = detail::rotation_derivatives(r);
            const std::size_t k = 3 * (static_cast<std::size_t>(l) * n + q);
            for (int p = 0; p < 3; ++p) {
                const Eigen::Matrix2cd kp = d[p] * rot.adjoint();
                grad[k + p] = scale * (kp.cwiseProduct(s)).sum().real();
            }
        }
        if (l > 0) {
            for (int q = 0; q < n; ++q) {
                kernels::apply_one_qubit(m.data(), dim, dim, q, rotation_matrix(params.at(l, q)).adjoint());
            }
        }
    }
    out.unitary = std::move(u);
    return out;
}

inline CircuitParams loss_gradient(const CircuitParams& params, const CouplingMatrix& coupling, double lambda,
                                   const ComplexMatrix& target,
                                   LossNormalization norm = LossNormalization::hilbert_dimension) {
    return loss_and_gradient(params, coupling, lambda, target, norm).gradient;
}

/// theta ~ U[0, 10 pi), vartheta ~ U[0, 2 pi), varphi ~ U[0, 2 pi), drawn in
/// (layer, qubit, theta, vartheta, varphi) order from Rng(seed).
inline CircuitParams init_params(int num_qubits, int depth, std::uint64_t seed) {
    CircuitParams p(num_qubits, depth);
    Rng rng(seed);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int l = 0; l < depth; ++l) {
        for (int q = 0; q < num_qubits; ++q) {
            RotationParams r;
            r.theta = rng.uniform(0.0, 5.0 * two_pi);
            r.vartheta = rng.uniform(0.0, two_pi);
            r.varphi = rng.uniform(0.0, two_pi);
            p.set(l, q, r);
        }
    }
    return p;
}

/// Normalised states with i.i.d. complex standard normal amplitudes (real part
/// then imaginary part, amplitude by amplitude, from Rng(seed)).
inline std::vector<StateVector> random_test_states(int num_qubits, int count, std::uint64_t seed) {
    if (count < 1) throw InvalidArgument("random_test_states needs count >= 1");
    if (num_qubits < 1 || num_qubits > max_statevector_qubits) throw InvalidArgument("random_test_states: bad qubit count");
    Rng rng(seed);
    const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        ComplexVector a(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(k) = complex(re, im);
        }
        a /= a.norm();
        states.push_back(StateVector{std::move(a), num_qubits});
    }
    return states;
}

/// Mean over `states` of |<psi| U^dagger V |psi>|^2.
inline double mean_test_fidelity(const ComplexMatrix& model, const ComplexMatrix& target,
                                 const std::vector<StateVector>& states) {
    if (states.empty()) throw InvalidArgument("mean_test_fidelity: no states");
    const ComplexMatrix w = model.adjoint() * target;
    double sum = 0.0;
    for (const auto& psi : states) {
        if (psi.amplitudes.size() != w.rows()) throw DimensionMismatch("test state dimension mismatch");
        sum += std::norm(psi.amplitudes.dot(w * psi.amplitudes));
    }
    return sum / static_cast<double>(states.size());
}

struct TrainConfig {
    int num_qubits = 6;
    int depth = 50;
    QubitLayout layout;
    InteractionProfile profile;
    double learning_rate = 0.01;
    double tolerance = 0.004;
    int max_epochs = 30000;
    int num_runs = 20;
    int num_test_states = 64;
    std::uint64_t seed = 0;
    int fidelity_every = 50;
    LossNormalization normalization = LossNormalization::hilbert_dimension;
    /// Worker threads for multi_run; 0 picks the hardware concurrency.
    int threads = 1;
    /// Defaults to qft_unitary(num_qubits).
    std::optional<ComplexMatrix> target;

    void validate() const {
        if (num_qubits < 1 || num_qubits > max_density_qubits) throw InvalidArgument("num_qubits must be in 1..10");
        if (depth < 1) throw InvalidArgument("depth must be >= 1");
        if (static_cast<int>(layout.size()) != num_qubits) {
            throw InvalidArgument("layout has " + std::to_string(layout.size()) + " positions for " +
                                  std::to_string(num_qubits) + " qubits");
        }
        layout.validate();
        profile.validate();
        if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be positive");
        if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
        if (max_epochs < 1) throw InvalidArgument("max_epochs must be >= 1");
        if (num_runs < 1) throw InvalidArgument("num_runs must be >= 1");
        if (num_test_states < 1) throw InvalidArgument("num_test_states must be >= 1");
        if (fidelity_every < 1) throw InvalidArgument("fidelity_every must be >= 1");
        if (threads < 0) throw InvalidArgument("threads must be >= 0");
        if (target) {
            const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
            if (target->rows() != dim || target->cols() != dim) throw DimensionMismatch("target has the wrong dimension");
        }
    }

    ComplexMatrix target_unitary() const { return target ? *target : qft_unitary(num_qubits); }
};

/// Seed of run `run` (parameter initialisation).
inline std::uint64_t run_seed(std::uint64_t seed, int run) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(run) + 1));
}

/// Seed of the test ensemble shared by every run.
inline std::uint64_t test_state_seed(std::uint64_t seed) { return splitmix64(seed + streams::test_states); }

struct FidelitySample {
    int epoch = 0;
    double fidelity = 0.0;
};

struct RunReport {
    int run = 0;
    std::uint64_t seed = 0;
    /// loss_trace[e] is the loss before the e-th update.
    std::vector<double> loss_trace;
    std::vector<FidelitySample> fidelity_trace;
    CircuitParams final_params;
    bool converged = false;
    int epochs_used = 0;
    double final_loss = 0.0;
    double final_fidelity = 0.0;
};

/// Loss is evaluated once per epoch; the loop stops at the first epoch whose
/// loss is <= tolerance or after max_epochs evaluations. Fidelity is sampled
/// every `fidelity_every` epochs and at the final epoch.
inline RunReport train_run(const TrainConfig& config, std::uint64_t seed, int run_index = 0) {
    config.validate();
    const auto coupling = coupling_matrix(config.layout, config.profile);
    const double lambda = config.profile.lambda;
    const auto target = config.target_unitary();
    const auto states = random_test_states(config.num_qubits, config.num_test_states, test_state_seed(config.seed));

    RunReport report;
    report.run = run_index;
    report.seed = seed;
    CircuitParams params = init_params(config.num_qubits, config.depth, seed);
    AdamState adam(params.size());
    report.loss_trace.reserve(static_cast<std::size_t>(std::min(config.max_epochs, 1 << 20)));

    for (int epoch = 0;; ++epoch) {
        auto lg = loss_and_gradient(params, coupling, lambda, target, config.normalization);
        report.loss_trace.push_back(lg.loss);
        const bool converged = lg.loss <= config.tolerance;
        const bool last = converged || epoch + 1 >= config.max_epochs;
        if (epoch % config.fidelity_every == 0 || last) {
            report.fidelity_trace.push_back({epoch, mean_test_fidelity(lg.unitary, target, states)});
        }
        if (last) {
            report.converged = converged;
            report.epochs_used = epoch + 1;
            report.final_loss = lg.loss;
            report.final_fidelity = report.fidelity_trace.back().fidelity;
            break;
        }
        adam_step(adam, params.values(), lg.gradient.values(), config.learning_rate);
    }
    report.final_params = std::move(params);
    return report;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population
};

inline MeanStd mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

struct TrainReport {
    std::vector<RunReport> runs;  // sorted by run index
    /// Per-epoch statistics over runs, shorter runs padded with their final loss.
    std::vector<MeanStd> loss_by_epoch;
    /// Statistics at fidelity_epochs; a run contributes its latest sample at or
    /// before the epoch, or its final value once it has stopped.
    std::vector<int> fidelity_epochs;
    std::vector<MeanStd> fidelity_by_epoch;
    MeanStd final_loss;
    MeanStd final_fidelity;
    int num_converged = 0;
    /// Statistics over converged runs only (NaN when none converged).
    MeanStd converged_loss;
    MeanStd converged_fidelity;
};

/// Loss of `run` at `epoch`, holding the final value past its end.
inline double padded_loss(const RunReport& run, int epoch) {
    const auto& t = run.loss_trace;
    return t[std::min(static_cast<std::size_t>(epoch), t.size() - 1)];
}

inline double padded_fidelity(const RunReport& run, int epoch) {
    const auto& t = run.fidelity_trace;
    auto it = std::upper_bound(t.begin(), t.end(), epoch, [](int e, const FidelitySample& s) { return e < s.epoch; });
    return it == t.begin() ? t.front().fidelity : std::prev(it)->fidelity;
}

inline TrainReport aggregate(std::vector<RunReport> runs, int fidelity_every) {
    if (runs.empty()) throw InvalidArgument("aggregate needs at least one run");
    std::sort(runs.begin(), runs.end(), [](const RunReport& a, const RunReport& b) { return a.run < b.run; });
    TrainReport rep;
    int longest = 0;
    for (const auto& r : runs) longest = std::max(longest, static_cast<int>(r.loss_trace.size()));

    std::vector<double> buf(runs.size());
    rep.loss_by_epoch.reserve(static_cast<std::size_t>(longest));
    for (int e = 0; e < longest; ++e) {
        for (std::size_t k = 0; k < runs.size(); ++k) buf[k] = padded_loss(runs[k], e);
        rep.loss_by_epoch.push_back(mean_std(buf));
    }
    for (int e = 0; e < longest; e += fidelity_every) rep.fidelity_epochs.push_back(e);
    if (rep.fidelity_epochs.back() != longest - 1) rep.fidelity_epochs.push_back(longest - 1);
    for (int e : rep.fidelity_epochs) {
        for (std::size_t k = 0; k < runs.size(); ++k) buf[k] = padded_fidelity(runs[k], e);
        rep.fidelity_by_epoch.push_back(mean_std(buf));
    }

    std::vector<double> losses, fids, closses, cfids;
    for (const auto& r : runs) {
        losses.push_back(r.final_loss);
        fids.push_back(r.final_fidelity);
        if (r.converged) {
            ++rep.num_converged;
            closses.push_back(r.final_loss);
            cfids.push_back(r.final_fidelity);
        }
    }
    rep.final_loss = mean_std(losses);
    rep.final_fidelity = mean_std(fids);
    rep.converged_loss = mean_std(closses);
    rep.converged_fidelity = mean_std(cfids);
    rep.runs = std::move(runs);
    return rep;
}

/// Runs num_runs independent trainings with run_seed(config.seed, r) and
/// aggregates them. `on_run_done` is called (serialised) as runs finish.
inline TrainReport multi_run(const TrainConfig& config,
                             const std::function<void(const RunReport&)>& on_run_done = {}) {
    config.validate();
    std::vector<RunReport> runs(static_cast<std::size_t>(config.num_runs));
    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr failure;
    auto worker = [&] {
        for (int r = next++; r < config.num_runs; r = next++) {
            try {
                runs[static_cast<std::size_t>(r)] = train_run(config, run_seed(config.seed, r), r);
                if (on_run_done) {
                    std::lock_guard lock(mu);
                    on_run_done(runs[static_cast<std::size_t>(r)]);
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    int threads = config.threads == 0 ? static_cast<int>(std::max(1U, std::thread::hardware_concurrency()))
                                      : config.threads;
    threads = std::min(threads, config.num_runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return aggregate(std::move(runs), config.fidelity_every);
}

}  // namespace rvqc
