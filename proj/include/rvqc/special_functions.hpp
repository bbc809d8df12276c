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

// Error function family used by the closed-form field couplings.
//
// erf/erfc follow W. J. Cody's rational Chebyshev approximations
// (Math. Comp. 1969), which are accurate to better than 1e-16 relative in
// double precision. The Dawson integral is evaluated with its Maclaurin
// series near the origin and Rybicki's exponentially convergent sampling
// formula elsewhere; erfi is derived from it as 2/sqrt(pi) e^{x^2} D(x).

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "rvqc/error.hpp"

namespace rvqc::special {

namespace detail {

// Cody's CALERF kernel. kind 0 -> erf, 1 -> erfc.
inline double calerf(double x, int kind) {
    static constexpr std::array<double, 5> a = {3.1611237438705656, 113.864154151050156,
                                                377.485237685302021, 3209.37758913846947,
                                                .185777706184603153};
    static constexpr std::array<double, 4> b = {23.6012909523441209, 244.024637934444173,
                                                1282.61652607737228, 2844.23683343917062};
    static constexpr std::array<double, 9> c = {
        .564188496988670089, 8.88314979438837594, 66.1191906371416295,
        298.635138197400131, 881.95222124176909,  1712.04761263407058,
        2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
    static constexpr std::array<double, 8> d = {15.7449261107098347, 117.693950891312499,
                                                537.181101862009858, 1621.38957456669019,
                                                3290.79923573345963, 4362.61909014324716,
                                                3439.36767414372164, 1230.33935480374942};
    static constexpr std::array<double, 6> p = {.305326634961232344, .360344899949804439,
                                                .125781726111229246, .0160837851487422766,
                                                6.58749161529837803e-4, .0163153871373020978};
    static constexpr std::array<double, 5> q = {2.56852019228982242, 1.87295284992346047,
                                                .527905102951428412, .0605183413124413191,
                                                .00233520497626869185};
    constexpr double sqrpi = 0.56418958354775628695;  // 1/sqrt(pi)
    constexpr double thresh = 0.46875;
    constexpr double xsmall = 1.11e-16;
    constexpr double xbig = 26.543;

    const double y = std::fabs(x);
    double result = 0.0;
    if (y <= thresh) {
        const double ysq = y > xsmall ? y * y : 0.0;
        double xnum = a[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + a[i]) * ysq;
            xden = (xden + b[i]) * ysq;
        }
        result = x * (xnum + a[3]) / (xden + b[3]);
        return kind == 0 ? result : 1.0 - result;
    }
    if (y <= 4.0) {
        double xnum = c[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + c[i]) * y;
            xden = (xden + d[i]) * y;
        }
        result = (xnum + c[7]) / (xden + d[7]);
        // exp(-y^2) split so that the rounding of y^2 does not leak into the result.
        const double ysq = std::trunc(y * 16.0) / 16.0;
        const double del = (y - ysq) * (y + ysq);
        result *= std::exp(-ysq * ysq) * std::exp(-del);
    } else if (y < xbig) {
        const double ysq = 1.0 / (y * y);
        double xnum = p[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + p[i]) * ysq;
            xden = (xden + q[i]) * ysq;
        }
        result = ysq * (xnum + p[4]) / (xden + q[4]);
        result = (sqrpi - result) / y;
        const double yt = std::trunc(y * 16.0) / 16.0;
        const double del = (y - yt) * (y + yt);
        result *= std::exp(-yt * yt) * std::exp(-del);
    }
    // result now holds erfc(|x|).
    if (kind == 0) {
        result = (0.5 - result) + 0.5;
        return x < 0.0 ? -result : result;
    }
    return x < 0.0 ? 2.0 - result : result;
}

}  // namespace detail

inline double erf(double x) { return detail::calerf(x, 0); }

inline double erfc(double x) { return detail::calerf(x, 1); }

/// Dawson's integral D(x) = e^{-x^2} \int_0^x e^{t^2} dt.
inline double dawson(double x) {
    const double ax = std::fabs(x);
    if (ax < 1.0) {
        // D(x) = sum_k (-1)^k 2^k x^{2k+1} / (2k+1)!!
        const double x2 = x * x;
        double term = x;
        double sum = x;
        for (int k = 1; k < 60; ++k) {
            term *= -2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    if (ax > 1e7) {
        const double inv = 1.0 / (x * x);
        return 0.5 / x * (1.0 + 0.5 * inv + 0.75 * inv * inv);
    }
    // Rybicki: D(x) = lim_{h->0} pi^{-1/2} sum_{n odd} e^{-(x - n h)^2} / n, with the
    // sum re-centred on the even multiple n0 h nearest to x. The discretisation error
    // is O(exp(-(pi / 2h)^2)), below 1e-26 for h = 0.2.
    constexpr double h = 0.2;
    constexpr int terms = 20;
    static const auto weights = [] {
        std::array<double, terms> w{};
        for (int i = 0; i < terms; ++i) {
            const double t = (2.0 * i + 1.0) * h;
            w[i] = std::exp(-t * t);
        }
        return w;
    }();
    const double n0 = 2.0 * std::round(0.5 * ax / h);
    const double xp = ax - n0 * h;
    double e1 = std::exp(2.0 * xp * h);
    const double e2 = e1 * e1;
    double d1 = n0 + 1.0;
    double d2 = d1 - 2.0;
    double sum = 0.0;
    for (int i = 0; i < terms; ++i) {
        sum += weights[i] * (e1 / d1 + 1.0 / (d2 * e1));
        d1 += 2.0;
        d2 -= 2.0;
        e1 *= e2;
    }
    const double value = std::numbers::inv_sqrtpi * std::exp(-xp * xp) * sum;
    return x < 0.0 ? -value : value;
}

/// Largest |x| accepted by erfi.
inline constexpr double erfi_max_argument = 30.0;

/// Imaginary error function erfi(x) = -i erf(ix) = 2/sqrt(pi) e^{x^2} D(x).
///
/// Throws OverflowError for |x| > 30 and for arguments whose value exceeds the
/// double range (|x| above roughly 26.6).
inline double erfi(double x) {
    if (!(std::fabs(x) <= erfi_max_argument)) {
        throw OverflowError("erfi: argument outside supported range |x| <= 30");
    }
    const double value = 2.0 * std::numbers::inv_sqrtpi * std::exp(x * x) * dawson(x);
    if (!std::isfinite(value)) {
        throw OverflowError("erfi: result overflows double precision");
    }
    return value;
}

}  // namespace rvqc::special
