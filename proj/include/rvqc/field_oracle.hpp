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

// Quadrature evaluations of the smeared field couplings, independent of the
// erf/Dawson closed forms in field.hpp. They exist to validate those closed
// forms and are too slow for production use.
//
// Delta: the retarded Green's function of the massless field in this sign
// convention is G_R(x, x') = -delta(t - t' - r) / (4 pi r). The two Gaussian
// time profiles convolve to sqrt(pi) T exp(-r^2 / 4T^2), and the two spatial
// Gaussians reduce to one relative displacement u ~ N(0, 2 sigma^2 I). With
// mu = cos(angle between u and x_i - x_j) and r^2 = L^2 + u^2 + 2 L u mu,
// the substitution d mu = r dr / (L u) cancels the 1/r singularity, leaving
//   Delta = -(T / 2 sqrt(pi)) (2 pi / L) \int du u g(u) \int_{|L-u|}^{L+u} exp(-r^2/4T^2) dr.
//
// Wightman: in momentum space the vacuum two-point function of the two
// smearings is
//   W = (T / (2 pi alpha L)) \int_0^inf exp(-v^2) sin(v L / (alpha T)) dv.

#pragma once

#include <cmath>
#include <numbers>

#include "rvqc/error.hpp"
#include "rvqc/field.hpp"
#include "rvqc/quadrature.hpp"

namespace rvqc {

struct OracleValue {
    double value = 0.0;
    double relative_error = 0.0;  // estimated
};

namespace detail {

inline constexpr double oracle_tolerance = 1e-4;

}  // namespace detail

/// Delta(Lambda_i, Lambda_j) for separation L > 0 by nested quadrature.
/// Throws NonConvergence when the error estimate exceeds 1e-4 relative.
inline OracleValue quadrature_oracle_delta(double L, const InteractionProfile& p) {
    if (!(L > 0.0)) throw InvalidArgument("quadrature_oracle_delta requires L > 0");
    const double s = std::sqrt(2.0) * p.sigma;
    const double inv4t2 = 1.0 / (4.0 * p.T * p.T);
    double worst_inner = 0.0;
    auto radial = [&](double v) {
        const double u = s * v;
        const auto inner = quadrature::integrate([&](double r) { return std::exp(-r * r * inv4t2); },
                                                 std::fabs(L - u), L + u);
        if (inner.value != 0.0) worst_inner = std::max(worst_inner, inner.error / std::fabs(inner.value));
        return v * std::exp(-0.5 * v * v) * inner.value;
    };
    const auto outer_result = quadrature::integrate(radial, 0.0, 14.0);
    const double outer = outer_result.value;
    const double err = outer_result.error;
    // u g(u) du = s^{-1} (2 pi)^{-3/2} v exp(-v^2/2) dv
    const double expectation = 2.0 * std::numbers::pi / L * std::pow(2.0 * std::numbers::pi, -1.5) / s * outer;
    OracleValue out;
    out.value = -p.T / (2.0 * std::sqrt(std::numbers::pi)) * expectation;
    out.relative_error = std::fabs(err / outer) + worst_inner;
    if (!(out.relative_error <= detail::oracle_tolerance) || !std::isfinite(out.value)) {
        throw NonConvergence("quadrature_oracle_delta: error estimate above 1e-4");
    }
    return out;
}

/// W(Lambda_i, Lambda_j) for separation L >= 0 (L = 0 gives the self term).
inline OracleValue quadrature_oracle_wightman(double L, const InteractionProfile& p) {
    if (!(L >= 0.0)) throw InvalidArgument("quadrature_oracle_wightman requires L >= 0");
    const double a = alpha(p.sigma, p.T);
    const double b = L / (a * p.T);
    // sin(b v) / b, continuous at b = 0
    auto integrand = [&](double v) {
        const double x = b * v;
        const double sinc = std::fabs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return std::exp(-v * v) * v * sinc;
    };
    const auto result = quadrature::integrate(integrand, 0.0, 10.0);
    const double integral = result.value;
    const double err = result.error;
    OracleValue out;
    out.value = integral / (2.0 * std::numbers::pi * a * a);
    out.relative_error = std::fabs(err / integral);
    if (!(out.relative_error <= detail::oracle_tolerance) || !std::isfinite(out.value)) {
        throw NonConvergence("quadrature_oracle_wightman: error estimate above 1e-4");
    }
    return out;
}

}  // namespace rvqc
