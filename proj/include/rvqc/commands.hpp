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

// Batch subcommands. Each writes its artifacts into config.output_dir and
// returns a process exit code: 0 success, 1 computation or verification
// failure, 2 configuration error.

#pragma once

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rvqc/config.hpp"
#include "rvqc/field.hpp"
#include "rvqc/io.hpp"
#include "rvqc/rng.hpp"
#include "rvqc/sim.hpp"
#include "rvqc/train.hpp"
#include "rvqc/transpile.hpp"

namespace rvqc {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_config = 2 };

inline constexpr double transpile_residual_tolerance = 1e-10;
inline constexpr int bound_exact_max_qubits = 8;
// Sampled fidelities may sit a few ulps under a bound of exactly one.
inline constexpr double bound_rounding_tolerance = 1e-12;
inline constexpr int dense_transpile_max_qubits = 7;

namespace detail {

inline std::filesystem::path out_path(const ExperimentConfig& c, const std::string& name) {
    return std::filesystem::path(c.output_dir) / name;
}

inline void write_effective_config(const ExperimentConfig& c) {
    io::write_atomic(out_path(c, "effective_config.ini"), config_to_string(c));
}

inline std::string fmt(double x) { return io::format_double(x); }

}  // namespace detail

inline int cmd_couplings(const ExperimentConfig& cfg, std::ostream& log) {
    const auto layout = cfg.qubit_layout();
    const auto c = coupling_matrix(layout, cfg.profile);
    const double l2 = cfg.profile.lambda * cfg.profile.lambda;
    detail::write_effective_config(cfg);
    io::write_atomic(detail::out_path(cfg, "delta.csv"), [&](std::ostream& os) { io::write_matrix_csv(os, c.delta); });
    io::write_atomic(detail::out_path(cfg, "wightman.csv"),
                     [&](std::ostream& os) { io::write_matrix_csv(os, c.wightman); });

    std::ostringstream s;
    s << "num_qubits = " << layout.size() << "\n";
    s << "T = " << detail::fmt(cfg.profile.T) << "\n";
    s << "sigma = " << detail::fmt(cfg.profile.sigma) << "\n";
    s << "lambda = " << detail::fmt(cfg.profile.lambda) << "\n";
    s << "noise_scale = " << detail::fmt(c.noise_scale) << "\n";
    s << "fidelity_lower_bound = " << detail::fmt(fidelity_lower_bound(cfg.profile.lambda, layout.size(), c.noise_scale))
      << "\n\n";
    s << "i,j,L,delta,lambda2_delta,abs_lambda2_delta,far_field_delta,far_field_rel_diff\n";
    for (int i = 0; i < layout.size(); ++i) {
        for (int j = i + 1; j < layout.size(); ++j) {
            const double L = layout.separation(i, j);
            const double d = c.delta(i, j);
            const double ff = delta_far_field(L, cfg.profile.T);
            s << i << ',' << j << ',' << detail::fmt(L) << ',' << detail::fmt(d) << ',' << detail::fmt(l2 * d) << ','
              << detail::fmt(std::fabs(l2 * d)) << ',' << detail::fmt(ff) << ',' << detail::fmt((d - ff) / ff) << "\n";
        }
    }
    io::write_atomic(detail::out_path(cfg, "couplings_summary.txt"), s.str());
    log << s.str();
    return exit_ok;
}

inline int cmd_bound(const ExperimentConfig& cfg, std::ostream& log) {
    const auto layout = cfg.qubit_layout();
    const int n = layout.size();
    const auto c = coupling_matrix(layout, cfg.profile);
    const double lambda = cfg.profile.lambda;
    const double per_layer = fidelity_lower_bound(lambda, n, c.noise_scale);
    const double all_layers = std::pow(per_layer, cfg.bound.layers);
    detail::write_effective_config(cfg);

    std::ostringstream s;
    s << "num_qubits = " << n << "\n";
    s << "lambda = " << detail::fmt(lambda) << "\n";
    s << "noise_scale = " << detail::fmt(c.noise_scale) << "\n";
    s << "per_layer_bound = " << detail::fmt(per_layer) << "\n";
    s << "layers = " << cfg.bound.layers << "\n";
    s << "all_layers_bound = " << detail::fmt(all_layers) << "\n";

    int violations = 0;
    if (n <= bound_exact_max_qubits && cfg.bound.num_states > 0) {
        Rng rng = Rng::stream(cfg.seed, streams::bound_states);
        const auto dim = static_cast<Eigen::Index>(dimension_of(n));
        double fmin = std::numeric_limits<double>::infinity(), fsum = 0.0;
        std::ostringstream csv;
        csv << "state,exact_fidelity,bound\n";
        for (int k = 0; k < cfg.bound.num_states; ++k) {
            ComplexVector a(dim);
            for (Eigen::Index b = 0; b < dim; ++b) {
                const double re = rng.normal();
                const double im = rng.normal();
                a(b) = complex(re, im);
            }
            a /= a.norm();
            const double f = exact_channel_fidelity(StateVector{a, n}, c, lambda);
            fmin = std::min(fmin, f);
            fsum += f;
            if (f < per_layer - bound_rounding_tolerance) ++violations;
            csv << k << ',' << detail::fmt(f) << ',' << detail::fmt(per_layer) << "\n";
        }
        io::write_atomic(detail::out_path(cfg, "bound_samples.csv"), csv.str());
        s << "sampled_states = " << cfg.bound.num_states << "\n";
        s << "exact_min_fidelity = " << detail::fmt(fmin) << "\n";
        s << "exact_mean_fidelity = " << detail::fmt(fsum / cfg.bound.num_states) << "\n";
        s << "violations = " << violations << "\n";
    } else {
        s << "sampled_states = 0\n";
    }
    io::write_atomic(detail::out_path(cfg, "bound.txt"), s.str());
    log << s.str();
    return violations == 0 ? exit_ok : exit_failure;
}

inline int cmd_transpile(const ExperimentConfig& cfg, std::ostream& log) {
    const auto layout = cfg.qubit_layout();
    const int n = layout.size();
    if (n < 3) throw ConfigError("[transpile] needs at least 3 qubits, layout has " + std::to_string(n));
    if (n > 62) throw ConfigError("[transpile] at most 62 qubits, layout has " + std::to_string(n));
    const bool dense = cfg.transpile.mode == "dense" || (cfg.transpile.mode == "auto" && n <= dense_transpile_max_qubits);
    if (dense && n > max_density_qubits) throw ConfigError("[transpile] dense mode supports at most 10 qubits");
    const auto pair = cfg.transpile_pair();
    const double lambda = cfg.profile.lambda;

    auto coupling = coupling_matrix(layout, cfg.profile);
    if (cfg.transpile.pair_delta) {
        coupling.delta(pair.first, pair.second) = coupling.delta(pair.second, pair.first) = *cfg.transpile.pair_delta;
    }
    const double delta_value = coupling.delta(pair.first, pair.second);
    auto plan = cfg.transpile.eliminate ? eliminate_pair_gate_plan(n) : pair_gate_plan(n, pair);
    detail::write_effective_config(cfg);
    io::write_atomic(detail::out_path(cfg, "plan.txt"), [&](std::ostream& os) { write_plan_text(os, plan); });

    bool ok = true;
    std::ostringstream s;
    s << "num_qubits = " << n << "\n";
    s << "target_pair = " << plan.target_pair.first << "," << plan.target_pair.second << "\n";
    s << "mode = " << (dense ? "dense" : "symbolic") << "\n";
    s << "eliminate = " << (cfg.transpile.eliminate ? "true" : "false") << "\n";
    s << "layer_cost = " << plan.layer_cost() << "\n";
    s << "exponent = " << plan.expected_exponent << "\n";

    const std::string locality = verify_locality(plan);
    s << "locality = " << (locality.empty() ? "ok" : locality) << "\n";
    ok = ok && locality.empty();
    for (const auto& part : plan.partitions) {
        const double bound = max_set_size_bound(n, part.iteration);
        const bool within = static_cast<double>(part.max_size()) <= bound;
        s << "round " << part.iteration << ": max_set_size = " << part.max_size() << ", bound = " << detail::fmt(bound)
          << (within ? "" : "  EXCEEDED") << "\n";
        ok = ok && within;
    }

    if (dense) {
        const auto u = execute_plan(plan, coupling, lambda);
        const ComplexMatrix v = cfg.transpile.eliminate
                                    ? ComplexMatrix::Identity(u.rows(), u.cols())
                                    : expected_pair_unitary(delta_value, lambda, plan.expected_exponent, n, pair);
        const double residual = phase_aligned_distance(u, v);
        s << "residual = " << detail::fmt(residual) << "\n";
        if (!cfg.transpile.eliminate) s << "operator_schmidt_rank = " << operator_schmidt_rank(pair_block(u, pair)) << "\n";
        if (!(residual <= transpile_residual_tolerance)) {
            s << "verification FAILED: residual above " << detail::fmt(transpile_residual_tolerance) << "\n";
            ok = false;
        }
    }

    if (!cfg.transpile.eliminate) {
        const double angle = pair_angle(delta_value, lambda, n);
        const double to_pi = distance_to_multiple(angle, std::numbers::pi);
        const double to_half_pi = distance_to_multiple(angle, 0.5 * std::numbers::pi);
        const bool angle_ok = check_entangling_angle(delta_value, lambda, n, cfg.transpile.margin);
        s << "delta_pair = " << detail::fmt(delta_value) << "\n";
        s << "pair_angle = " << detail::fmt(angle) << "\n";
        s << "distance_to_multiple_of_pi = " << detail::fmt(to_pi) << "\n";
        s << "distance_to_multiple_of_half_pi = " << detail::fmt(to_half_pi) << "\n";
        s << "margin = " << detail::fmt(cfg.transpile.margin) << "\n";
        s << "angle_check = " << (angle_ok ? "pass" : "FAIL: pair angle within margin of a multiple of pi") << "\n";
        if (to_half_pi <= cfg.transpile.margin && angle_ok) {
            s << "note: pair angle is within margin of an odd multiple of pi/2, where the gate is a local Clifford\n";
        }
        ok = ok && angle_ok;
    }
    s << "status = " << (ok ? "ok" : "failed") << "\n";
    io::write_atomic(detail::out_path(cfg, "transpile_report.txt"), s.str());
    log << s.str();
    return ok ? exit_ok : exit_failure;
}

/// Mean fidelity of the trained circuit with the full field channel in place
/// of every entangler, against the target on the given states.
inline double noisy_test_fidelity(const CircuitParams& params, const CouplingMatrix& coupling, double lambda,
                                  const ComplexMatrix& target, const std::vector<StateVector>& states) {
    double sum = 0.0;
    for (const auto& psi : states) {
        auto rho = DensityMatrix::from_state(psi);
        apply_noisy_circuit(rho, params, coupling, lambda);
        sum += state_fidelity(rho, StateVector{target * psi.amplitudes, psi.num_qubits});
    }
    return sum / static_cast<double>(states.size());
}

inline int cmd_train(const ExperimentConfig& cfg, std::ostream& log) {
    const auto tc = cfg.train_config();
    if (tc.num_qubits > max_density_qubits) throw ConfigError("[train] supports at most 10 qubits");
    detail::write_effective_config(cfg);
    const auto report = multi_run(tc, [&](const RunReport& r) {
        log << "run " << r.run << ": " << (r.converged ? "converged" : "not converged") << " after " << r.epochs_used
            << " epochs, loss " << detail::fmt(r.final_loss) << ", fidelity " << detail::fmt(r.final_fidelity) << "\n"
            << std::flush;
    });

    io::write_atomic(detail::out_path(cfg, "traces.csv"), [&](std::ostream& os) {
        os << "epoch,run,loss,fidelity\n";
        for (const auto& r : report.runs) {
            std::size_t f = 0;
            for (std::size_t e = 0; e < r.loss_trace.size(); ++e) {
                os << e << ',' << r.run << ',' << detail::fmt(r.loss_trace[e]) << ',';
                if (f < r.fidelity_trace.size() && r.fidelity_trace[f].epoch == static_cast<int>(e)) {
                    os << detail::fmt(r.fidelity_trace[f++].fidelity);
                }
                os << '\n';
            }
        }
    });
    io::write_atomic(detail::out_path(cfg, "aggregate.csv"), [&](std::ostream& os) {
        os << "epoch,loss_mean,loss_std,fidelity_mean,fidelity_std\n";
        std::size_t f = 0;
        for (std::size_t e = 0; e < report.loss_by_epoch.size(); ++e) {
            os << e << ',' << detail::fmt(report.loss_by_epoch[e].mean) << ','
               << detail::fmt(report.loss_by_epoch[e].std) << ',';
            if (f < report.fidelity_epochs.size() && report.fidelity_epochs[f] == static_cast<int>(e)) {
                os << detail::fmt(report.fidelity_by_epoch[f].mean) << ',' << detail::fmt(report.fidelity_by_epoch[f].std);
                ++f;
            } else {
                os << ',';
            }
            os << '\n';
        }
    });
    io::write_atomic(detail::out_path(cfg, "params.csv"), [&](std::ostream& os) {
        os << "run,layer,qubit,theta,vartheta,varphi\n";
        for (const auto& r : report.runs) {
            for (int l = 0; l < r.final_params.depth(); ++l) {
                for (int q = 0; q < r.final_params.num_qubits(); ++q) {
                    const auto p = r.final_params.at(l, q);
                    os << r.run << ',' << l << ',' << q << ',' << detail::fmt(p.theta) << ',' << detail::fmt(p.vartheta)
                       << ',' << detail::fmt(p.varphi) << '\n';
                }
            }
        }
    });

    const auto coupling = coupling_matrix(tc.layout, tc.profile);
    const auto target = tc.target_unitary();
    std::size_t best = 0;
    for (std::size_t k = 1; k < report.runs.size(); ++k) {
        if (report.runs[k].final_loss < report.runs[best].final_loss) best = k;
    }
    const auto states = random_test_states(tc.num_qubits, tc.num_test_states, test_state_seed(tc.seed));
    const double noisy = noisy_test_fidelity(report.runs[best].final_params, coupling, tc.profile.lambda, target, states);

    std::ostringstream s;
    s << "num_qubits = " << tc.num_qubits << "\n";
    s << "depth = " << tc.depth << "\n";
    s << "normalization = " << cfg.train.normalization << "\n";
    s << "special_unitary_loss_floor = " << detail::fmt(special_unitary_loss_floor(target, tc.num_qubits, tc.normalization))
      << "\n";
    s << "runs = " << report.runs.size() << "\n";
    s << "converged = " << report.num_converged << "\n";
    s << "final_loss_mean = " << detail::fmt(report.final_loss.mean) << "\n";
    s << "final_loss_std = " << detail::fmt(report.final_loss.std) << "\n";
    s << "final_fidelity_mean = " << detail::fmt(report.final_fidelity.mean) << "\n";
    s << "final_fidelity_std = " << detail::fmt(report.final_fidelity.std) << "\n";
    s << "converged_loss_mean = " << detail::fmt(report.converged_loss.mean) << "\n";
    s << "converged_loss_std = " << detail::fmt(report.converged_loss.std) << "\n";
    s << "converged_fidelity_mean = " << detail::fmt(report.converged_fidelity.mean) << "\n";
    s << "converged_fidelity_std = " << detail::fmt(report.converged_fidelity.std) << "\n";
    s << "best_run = " << report.runs[best].run << "\n";
    s << "best_run_noisy_fidelity = " << detail::fmt(noisy) << "\n";
    s << "run,seed,converged,epochs,final_loss,final_fidelity\n";
    for (const auto& r : report.runs) {
        s << r.run << ',' << r.seed << ',' << (r.converged ? 1 : 0) << ',' << r.epochs_used << ','
          << detail::fmt(r.final_loss) << ',' << detail::fmt(r.final_fidelity) << "\n";
    }
    io::write_atomic(detail::out_path(cfg, "summary.txt"), s.str());
    log << s.str();
    return exit_ok;
}

}  // namespace rvqc
