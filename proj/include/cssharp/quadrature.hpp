#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "cssharp/errors.hpp"

namespace cssharp::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = kronrod_w[7] * fc;
    double gauss = gauss_w[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[i];
        const double pair = f(c - dx) + f(c + dx);
        kronrod += kronrod_w[i] * pair;
        if (i % 2 == 1) gauss += gauss_w[i / 2] * pair;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: the panel with the largest
/// error estimate |K15 - G7| is bisected until the summed estimate drops to
/// abs_tol or max_panels is reached.
template <class F>
Result adaptive(const F& f, double a, double b, double abs_tol, std::size_t max_panels = 8192) {
    std::priority_queue<detail::Panel> heap;
    heap.push(detail::gk15(f, a, b));
    double total_err = heap.top().error;
    while (total_err > abs_tol && heap.size() < max_panels) {
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum from scratch so the running error total cannot drift.
    std::vector<detail::Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    Result out;
    for (const auto& p : panels) {
        out.value += p.value;
        out.error += p.error;
    }
    out.intervals = panels.size();
    out.converged = out.error <= abs_tol;
    return out;
}

/// Fixed composite rule: `panels` equal GK15 panels on [a, b].
template <class F>
Result composite(const F& f, double a, double b, std::size_t panels = 2048) {
    Result out;
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = i + 1 == panels ? b : lo + width;
        const auto p = detail::gk15(f, lo, hi);
        out.value += p.value;
        out.error += p.error;
    }
    out.intervals = panels;
    out.converged = true;
    return out;
}

/// Integral over [a, b] split at `breaks` (points where the integrand may have
/// a kink or jump). Each piece is integrated adaptively with an equal share of
/// abs_tol; a piece that fails to converge falls back to the 2048-panel
/// composite rule. Throws QuadratureFailure if the error budget is still
/// exceeded.
template <class F>
double integrate(const F& f, double a, double b, std::vector<double> breaks, double abs_tol) {
    std::vector<double> edges{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks)
        if (x > edges.back() && x < b) edges.push_back(x);
    edges.push_back(b);

    const std::size_t pieces = edges.size() - 1;
    const double share = abs_tol / static_cast<double>(pieces);
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        Result r = adaptive(f, edges[i], edges[i + 1], share);
        if (!r.converged) {
            const Result fallback = composite(f, edges[i], edges[i + 1]);
            if (fallback.error < r.error) r = fallback;
        }
        value += r.value;
        error += r.error;
    }
    if (!(error <= abs_tol) || !std::isfinite(value))
        throw QuadratureFailure("quadrature error estimate " + std::to_string(error) +
                                " exceeds tolerance " + std::to_string(abs_tol));
    return value;
}

} // namespace cssharp::quad
