#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cssharp/bounds.hpp"
#include "cssharp/partition.hpp"
#include "cssharp/projection.hpp"
#include "cssharp/series.hpp"
#include "cssharp/summation.hpp"

// Sample-level consequences of the refined Cauchy-Schwarz chain. Population
// moments are realized under the empirical measure with 1/n normalization.

namespace cssharp {

struct InequalityPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

namespace detail {

/// Sum of squared deviations from the mean, i.e. ||x||^2 - n xbar^2.
inline double centered_sum_squares(const Series& x) { return squared_norm(centered(x).span()); }

inline double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

} // namespace detail

/// |sum x_i y_i| <= n |xbar ybar| + sqrt(||x||^2 - n xbar^2) sqrt(||y||^2 - n ybar^2),
/// the chain for the mean-direction projection written in sample moments.
inline InequalityPair sample_mean_bound(const Series& x, const Series& y) {
    require_same_length(x, y);
    const double n = static_cast<double>(x.size());
    InequalityPair out;
    out.lhs = std::abs(dot(x.span(), y.span()));
    out.rhs = n * std::abs(mean(x) * mean(y)) +
              std::sqrt(detail::centered_sum_squares(x)) * std::sqrt(detail::centered_sum_squares(y));
    return out;
}

/// |<x,y> - n xbar ybar| <= n sbar(x) sbar(y) with sbar(x)^2 = ||x||^2/n - xbar^2.
///
/// Both sides are evaluated on centered data: the left as |<x',y'>| and the
/// right as sqrt(||x'||^2 ||y'||^2), which equals n sbar(x) sbar(y).
inline InequalityPair sample_cov_bound(const Series& x, const Series& y) {
    require_same_length(x, y);
    const Series xc = centered(x);
    const Series yc = centered(y);
    InequalityPair out;
    out.lhs = std::abs(dot(xc.span(), yc.span()));
    out.rhs = std::sqrt(squared_norm(xc.span()) * squared_norm(yc.span()));
    return out;
}

struct SquaredBound {
    double lhs = 0.0;          ///< (sum x_i y_i)^2
    double rhs = 0.0;          ///< subtracted form
    double rhs_squared = 0.0;  ///< square of sample_mean_bound's rhs
    double defect = 0.0;       ///< rhs - lhs
};

/// Squared form of sample_mean_bound:
///   (sum x_i y_i)^2 <= ||x||^2 ||y||^2 - n (|xbar| sqrt(Syy) - |ybar| sqrt(Sxx))^2
/// where Sxx = ||x||^2 - n xbar^2.
inline SquaredBound sample_cov_squared_bound(const Series& x, const Series& y) {
    require_same_length(x, y);
    const double n = static_cast<double>(x.size());
    const double ip = dot(x.span(), y.span());
    const double sxx = detail::centered_sum_squares(x);
    const double syy = detail::centered_sum_squares(y);
    const double gap = std::abs(mean(x)) * std::sqrt(syy) - std::abs(mean(y)) * std::sqrt(sxx);

    SquaredBound out;
    out.lhs = ip * ip;
    out.rhs = squared_norm(x.span()) * squared_norm(y.span()) - n * gap * gap;
    const double r = sample_mean_bound(x, y).rhs;
    out.rhs_squared = r * r;
    out.defect = out.rhs - out.lhs;
    return out;
}

/// E(XY)^2 <= E(X^2) E(Y^2) - (|EX| sigma_Y - |EY| sigma_X)^2 under the
/// empirical measure of the paired sample.
inline InequalityPair expectation_variant_bound(const Series& x, const Series& y) {
    require_same_length(x, y);
    const double n = static_cast<double>(x.size());
    const double mxy = dot(x.span(), y.span()) / n;
    const double sx = std::sqrt(detail::centered_sum_squares(x) / n);
    const double sy = std::sqrt(detail::centered_sum_squares(y) / n);
    const double gap = std::abs(mean(x)) * sy - std::abs(mean(y)) * sx;
    InequalityPair out;
    out.lhs = mxy * mxy;
    out.rhs = (squared_norm(x.span()) / n) * (squared_norm(y.span()) / n) - gap * gap;
    return out;
}

// ---------------------------------------------------------------------------
// Lagged cross-covariance

struct CrossCovBound {
    std::size_t h = 0;     ///< forward lag
    std::size_t k = 0;     ///< split: coordinates 1..k of the overlap form the first block
    double r_bar = 0.0;    ///< (1/n) sum_{t=1}^{n-h} x_t y_{t+h}
    double d_bound = 0.0;  ///< D(x_{1:n-h}, y_{1+h:n} | prefix k) / n
    double cs_bound = 0.0; ///< ||x_{1:n-h}|| ||y_{1+h:n}|| / n

    [[nodiscard]] bool chain_holds(double tol = tolerance::rel) const noexcept {
        const double slack = tol * cs_bound;
        return std::abs(r_bar) <= d_bound + slack && d_bound <= cs_bound + slack;
    }
};

namespace detail {

inline void check_lag(std::size_t n, std::size_t h) {
    if (h < 1 || h + 1 > n)
        throw LagOutOfRange("lag " + std::to_string(h) + " outside [1, " + std::to_string(n - 1) +
                            "] for series of length " + std::to_string(n));
}

inline void check_split(std::size_t overlap, std::size_t k) {
    if (k < 1 || k > overlap)
        throw SplitOutOfRange("split " + std::to_string(k) + " outside [1, " +
                              std::to_string(overlap) + "]");
}

/// The overlapping pair (x_{1:n-h}, y_{1+h:n}), optionally after centering
/// each full series by its own mean.
struct LaggedPair {
    Series lead;
    Series lagged;
};

inline LaggedPair lagged_pair(const Series& x, const Series& y, std::size_t h, bool center) {
    require_same_length(x, y);
    check_lag(x.size(), h);
    const std::size_t overlap = x.size() - h;
    if (center) {
        return {centered(x).slice(0, overlap), centered(y).slice(h, overlap)};
    }
    return {x.slice(0, overlap), y.slice(h, overlap)};
}

inline CrossCovBound cross_cov_from_pair(const LaggedPair& p, std::size_t n, std::size_t h,
                                         std::size_t k) {
    check_split(p.lead.size(), k);
    const BoundReport r = d_function(p.lead, p.lagged, proj::CoordinatePrefix{k});
    const double nn = static_cast<double>(n);
    return {h, k, r.inner / nn, r.d_value / nn, r.cs_value / nn};
}

} // namespace detail

/// Lag-h cross-covariance with its split bound for coordinate prefix k.
/// Inputs are centered by their sample means unless `center` is false.
inline CrossCovBound cross_cov_bound(const Series& x, const Series& y, std::size_t h,
                                     std::size_t k, bool center = true) {
    const auto pair = detail::lagged_pair(x, y, h, center);
    return detail::cross_cov_from_pair(pair, x.size(), h, k);
}

/// The k = h bound written as a combination of block root-mean-squares:
///   (h/n) rms(x_{1:h}) rms(y_{h+1:2h}) + (1 - 2h/n) rms(x_{h+1:n-h}) rms(y_{2h+1:n}).
/// Requires 2h <= n; an empty second block contributes zero.
inline double lag_block_bound(const Series& x, const Series& y, std::size_t h, bool center = true) {
    require_same_length(x, y);
    const std::size_t n = x.size();
    detail::check_lag(n, h);
    if (2 * h > n)
        throw SplitOutOfRange("block bound needs 2h <= n (h = " + std::to_string(h) +
                              ", n = " + std::to_string(n) + ")");
    const Series xs = center ? centered(x) : x;
    const Series ys = center ? centered(y) : y;
    auto rms = [](const Series& s, std::size_t first, std::size_t count) {
        return std::sqrt(squared_norm(s.span().subspan(first, count)) / static_cast<double>(count));
    };
    const double nn = static_cast<double>(n);
    const double hh = static_cast<double>(h);
    double out = (hh / nn) * rms(xs, 0, h) * rms(ys, h, h);
    const std::size_t tail = n - 2 * h;
    if (tail > 0) out += (1.0 - 2.0 * hh / nn) * rms(xs, h, tail) * rms(ys, 2 * h, tail);
    return out;
}

struct SplitSearch {
    std::size_t k_star = 0;
    double d_min = 0.0;
    CrossCovBound bound; ///< cross_cov_bound evaluated at k_star
};

/// Split k in [1, n-h] minimizing the lag-h bound, ties to the smallest k.
///
/// A linear scan over compensated prefix/suffix sums of squares locates the
/// minimum; every k whose scanned value lies within a rounding band of that
/// minimum is then re-evaluated through cross_cov_bound, so the reported
/// k_star and d_min coincide with an exhaustive scan of cross_cov_bound.
inline SplitSearch best_split(const Series& x, const Series& y, std::size_t h, bool center = true) {
    const auto pair = detail::lagged_pair(x, y, h, center);
    const auto a = pair.lead.span();
    const auto z = pair.lagged.span();
    const std::size_t m = a.size();

    // head[k] = sum_{i<k} v_i^2, tail[k] = sum_{i>=k} v_i^2
    auto scan = [m](std::span<const double> v, std::vector<double>& head, std::vector<double>& tail) {
        head.assign(m + 1, 0.0);
        tail.assign(m + 1, 0.0);
        CompensatedSum fwd, bwd;
        for (std::size_t i = 0; i < m; ++i) {
            fwd.add(v[i] * v[i]);
            head[i + 1] = fwd.value();
            bwd.add(v[m - 1 - i] * v[m - 1 - i]);
            tail[m - 1 - i] = bwd.value();
        }
    };
    std::vector<double> ah, at, zh, zt;
    scan(a, ah, at);
    scan(z, zh, zt);

    std::vector<double> approx(m + 1, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= m; ++k) {
        approx[k] = std::sqrt(ah[k]) * std::sqrt(zh[k]) + std::sqrt(at[k]) * std::sqrt(zt[k]);
        best = std::min(best, approx[k]);
    }

    const double scale = std::sqrt(ah[m]) * std::sqrt(zh[m]);
    const double band = best + 1e-12 * scale;
    SplitSearch out;
    bool found = false;
    for (std::size_t k = 1; k <= m; ++k) {
        if (approx[k] > band) continue;
        const CrossCovBound b = detail::cross_cov_from_pair(pair, x.size(), h, k);
        if (!found || b.d_bound < out.d_min) {
            out = {k, b.d_bound, b};
            found = true;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conditioning and correlation

/// E(x | G) under the empirical measure: each entry replaced by its group mean.
inline Series conditional_expectation(const Series& x, const Partition& p) {
    if (p.size() != x.size()) throw DimensionMismatch(x.size(), p.size());
    return Series(detail::group_means(x.span(), p));
}

/// Partition of the indices of `y` into `bins` groups of (nearly) equal size
/// by rank. Ties are ordered by index.
inline Partition quantile_partition(const Series& y, std::size_t bins) {
    const std::size_t n = y.size();
    if (bins < 1 || bins > n)
        throw InvalidArgument("bin count " + std::to_string(bins) + " outside [1, " +
                              std::to_string(n) + "]");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
    std::vector<std::int64_t> labels(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        labels[order[rank]] = static_cast<std::int64_t>(rank * bins / n);
    return Partition(labels);
}

struct CorrelationReport {
    double rho = 0.0;           ///< classical correlation cov / (sigma_x sigma_y)
    double rho_p = 0.0;         ///< cov / D(x', y' | P); 0 when D = 0
    double d_denominator = 0.0; ///< D(x', y' | P) / n
    double cov = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    double sigma_proj_x = 0.0;  ///< ||P x'|| / sqrt(n), e.g. sigma of E(X|G)
    double sigma_proj_y = 0.0;

    /// |rho| <= |rho_p| <= 1 and |cov| <= d_denominator <= sigma_x sigma_y, with slack.
    [[nodiscard]] bool chain_holds(double tol = tolerance::rel) const noexcept {
        const double s = sigma_x * sigma_y;
        return std::abs(rho) <= std::abs(rho_p) + tol && std::abs(rho_p) <= 1.0 &&
               std::abs(cov) <= d_denominator + tol * s && d_denominator <= s + tol * s;
    }
};

namespace detail {

inline CorrelationReport correlation_from_parts(double n, double inner, double cs,
                                                double proj_x, double proj_y, double res_x,
                                                double res_y, double norm_x, double norm_y) {
    const double root_n = std::sqrt(n);
    CorrelationReport c;
    c.cov = inner / n;
    c.sigma_x = norm_x / root_n;
    c.sigma_y = norm_y / root_n;
    c.sigma_proj_x = proj_x / root_n;
    c.sigma_proj_y = proj_y / root_n;
    const double d = proj_x * proj_y + res_x * res_y;
    c.d_denominator = d / n;
    c.rho = cs > 0.0 ? clamp_unit(inner / cs) : 0.0;
    c.rho_p = d > 0.0 ? clamp_unit(inner / d) : 0.0;
    return c;
}

} // namespace detail

/// Correlation sharpened by conditioning on the partition G:
///   rho^G = cov(X,Y) / (sigma_{E(X|G)} sigma_{E(Y|G)}
///                       + sqrt(sigma_X^2 - sigma_{E(X|G)}^2) sqrt(sigma_Y^2 - sigma_{E(Y|G)}^2)).
///
/// The projected parts are formed as E(x|G) - xbar and the residuals as
/// x - E(x|G), so the trivial and the singleton partition both reproduce rho
/// bit-exactly.
inline CorrelationReport conditional_corr(const Series& x, const Series& y, const Partition& p) {
    require_same_length(x, y);
    const Series cx = conditional_expectation(x, p);
    const Series cy = conditional_expectation(y, p);
    const Series xc = centered(x);
    const Series yc = centered(y);
    const double mx = mean(x);
    const double my = mean(y);

    std::vector<double> px(x.size()), py(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        px[i] = cx[i] - mx;
        py[i] = cy[i] - my;
    }
    const double nx = norm(xc);
    const double ny = norm(yc);
    return detail::correlation_from_parts(
        static_cast<double>(x.size()), dot(xc.span(), yc.span()), nx * ny,
        std::sqrt(squared_norm(px)), std::sqrt(squared_norm(py)), norm(x - cx), norm(y - cy), nx, ny);
}

/// P-correlation cov(x,y) / D(x',y'|P) on the centered series x', y'.
/// For P = Identity this is the classical correlation exactly.
inline CorrelationReport p_correlation(const Series& x, const Series& y, const ProjectionSpec& spec) {
    require_same_length(x, y);
    const Series xc = centered(x);
    const Series yc = centered(y);
    const BoundReport r = d_function(xc, yc, spec);
    return detail::correlation_from_parts(static_cast<double>(x.size()), r.inner, r.cs_value,
                                          r.p_norm_x, r.p_norm_y, r.residual_x, r.residual_y,
                                          norm(xc), norm(yc));
}

} // namespace cssharp
