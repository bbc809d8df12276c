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

// Globally adaptive 7/15-point Gauss-Kronrod quadrature. The node tables come
// from Boost.Math; the bisection driver keeps a heap of subintervals ordered
// by their |K15 - G7| error and splits the worst one until the summed error
// meets the requested tolerance.

#pragma once

#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rvqc::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;  // absolute
    bool converged = false;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_panel(F& f, double a, double b) {
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kronrod = wk[0] * f0;
    double gauss = wg[0] * f0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = half * xk[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += wk[i] * pair;
        // Gauss nodes are the even-indexed Kronrod nodes.
        if (i % 2 == 0) gauss += wg[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [a, b] to max(abs_tol, rel_tol |I|).
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                 int max_panels = 4000) {
    std::priority_queue<detail::Panel> heap;
    heap.push(detail::gauss_kronrod_panel(f, a, b));
    double total = heap.top().value;
    double error = heap.top().error;
    int panels = 1;
    while (error > std::max(abs_tol, rel_tol * std::fabs(total)) && panels < max_panels) {
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gauss_kronrod_panel(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum to shed the drift of the incremental updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {total, error, error <= std::max(abs_tol, rel_tol * std::fabs(total))};
}

}  // namespace rvqc::quadrature
