#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cssharp/basis.hpp"
#include "cssharp/density.hpp"
#include "cssharp/errors.hpp"
#include "cssharp/quadrature.hpp"
#include "cssharp/series.hpp"
#include "cssharp/summation.hpp"

namespace cssharp {

/// Absolute tolerance of every quadrature-backed quantity below.
inline constexpr double quadrature_tolerance = 1e-10;

/// Basis coefficients (f_1, ..., f_count), either estimated from a sample
/// (sample_size > 0) or exact (sample_size == 0).
struct CoefficientVector {
    std::vector<double> values;
    std::size_t sample_size = 0;
    BasisFamily basis;
};

/// f_hat_k = (1/n) sum_i e_k(U_i) with U_i the observations mapped to [0, 1].
/// Observations outside the basis domain are rejected with DomainError.
inline CoefficientVector estimate_coefficients(const Series& sample, const BasisFamily& basis,
                                               std::size_t count) {
    if (count < 1) throw InvalidArgument("coefficient count must be at least 1");
    std::vector<double> u(sample.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = basis.to_unit(sample[i]);

    CoefficientVector out{std::vector<double>(count), sample.size(), basis};
    const double n = static_cast<double>(u.size());
    for (std::size_t k = 1; k <= count; ++k) {
        const int kk = static_cast<int>(k);
        out.values[k - 1] =
            pairwise_reduce(0, u.size(), [&](std::size_t i) { return basis.value(kk, u[i]); }) / n;
    }
    return out;
}

namespace detail {

inline std::vector<double> merged_breaks(const DensityModel& f, const DensityModel& g) {
    auto b = f.breakpoints();
    auto gb = g.breakpoints();
    b.insert(b.end(), gb.begin(), gb.end());
    return b;
}

} // namespace detail

/// f_k = <f, e_k> on [0, 1] by adaptive quadrature. Only the basis kind
/// matters here: models already live on the unit interval.
inline CoefficientVector exact_coefficients(const DensityModel& model, const BasisFamily& basis,
                                            std::size_t count) {
    if (count < 1) throw InvalidArgument("coefficient count must be at least 1");
    CoefficientVector out{std::vector<double>(count), 0, basis};
    for (std::size_t k = 1; k <= count; ++k) {
        const int kk = static_cast<int>(k);
        out.values[k - 1] = quad::integrate(
            [&](double u) { return model(u) * basis.value(kk, u); }, 0.0, 1.0,
            model.breakpoints(), quadrature_tolerance);
    }
    return out;
}

/// <f, g> in L^2[0, 1].
inline double l2_inner(const DensityModel& f, const DensityModel& g) {
    return quad::integrate([&](double u) { return f(u) * g(u); }, 0.0, 1.0,
                           detail::merged_breaks(f, g), quadrature_tolerance);
}

/// Cauchy-Schwarz divergence -log(<f,g> / (||f|| ||g||)).
///
/// The normalizer is sqrt(||f||^2 ||g||^2), which makes the value exactly 0
/// for f = g and symmetric bit-for-bit.
inline double cs_divergence_exact(const DensityModel& f, const DensityModel& g) {
    const double fg = l2_inner(f, g);
    if (!(fg > 0.0))
        throw UndefinedDivergence("densities have zero overlap (integral of f g = " +
                                  std::to_string(fg) + ")");
    return -std::log(fg / std::sqrt(l2_inner(f, f) * l2_inner(g, g)));
}

/// Projection-refined divergence -log(<f,g> / D(f,g|P_N)) where P_N keeps the
/// first N basis coefficients:
///   D = ||P_N f|| ||P_N g|| + ||f - P_N f|| ||g - P_N g||.
/// Never exceeds cs_divergence_exact and converges to it as N grows.
inline double cs_p_divergence_exact(const DensityModel& f, const DensityModel& g,
                                    const BasisFamily& basis, std::size_t n_coeffs) {
    if (n_coeffs < 1) throw InvalidArgument("N must be at least 1");
    const double fg = l2_inner(f, g);
    if (!(fg > 0.0))
        throw UndefinedDivergence("densities have zero overlap (integral of f g = " +
                                  std::to_string(fg) + ")");
    const auto cf = exact_coefficients(f, basis, n_coeffs);
    const auto cg = exact_coefficients(g, basis, n_coeffs);
    const double tf = squared_norm(cf.values);
    const double tg = squared_norm(cg.values);
    const double rf = std::max(0.0, l2_inner(f, f) - tf);
    const double rg = std::max(0.0, l2_inner(g, g) - tg);
    const double d = std::sqrt(tf * tg) + std::sqrt(rf * rg);
    return -std::log(fg / d);
}

/// Diagnostics of the projection estimator
///   T = log( (sqrt(t_f t_g) + sqrt(r_f r_g)) / sum_{k=1}^{2N} f_hat_k g_hat_k )
/// with t = sum_{k<=N} coef^2 and r = sum_{N<k<=2N} coef^2. The squared
/// coefficient estimates are biased upward by their variance; no correction
/// is applied.
struct DivergenceEstimate {
    double value = 0.0;
    double t_hat_f = 0.0;
    double t_hat_g = 0.0;
    double r_hat_f = 0.0;
    double r_hat_g = 0.0;
    double numerator = 0.0; ///< sqrt(t_f t_g) + sqrt(r_f r_g)
    double denom = 0.0;     ///< sum_{k=1}^{2N} f_hat_k g_hat_k
    std::size_t n_coeffs = 0;
    std::size_t n_f = 0;
    std::size_t n_g = 0;
    std::vector<double> coeffs_f;
    std::vector<double> coeffs_g;
};

/// Raised when the estimator's denominator is not positive. Carries the
/// partially filled estimate for diagnostics.
class UndefinedEstimate : public UndefinedDivergence {
public:
    explicit UndefinedEstimate(DivergenceEstimate e)
        : UndefinedDivergence("estimator denominator " + std::to_string(e.denom) +
                              " is not positive; increase the sample size or change N"),
          estimate_(std::move(e)) {}
    [[nodiscard]] const DivergenceEstimate& estimate() const noexcept { return estimate_; }

private:
    DivergenceEstimate estimate_;
};

/// Both samples are mapped through the same basis domain. The denominator is
/// accumulated as (first N products) + (last N products) so identical samples
/// give numerator == denominator and a value of exactly 0.
inline DivergenceEstimate estimate_divergence(const Series& sample_f, const Series& sample_g,
                                              const BasisFamily& basis, std::size_t n_coeffs) {
    if (n_coeffs < 1) throw InvalidArgument("N must be at least 1");
    const auto cf = estimate_coefficients(sample_f, basis, 2 * n_coeffs);
    const auto cg = estimate_coefficients(sample_g, basis, 2 * n_coeffs);
    const std::span<const double> f(cf.values);
    const std::span<const double> g(cg.values);
    const auto head_f = f.first(n_coeffs), tail_f = f.last(n_coeffs);
    const auto head_g = g.first(n_coeffs), tail_g = g.last(n_coeffs);

    DivergenceEstimate e;
    e.n_coeffs = n_coeffs;
    e.n_f = sample_f.size();
    e.n_g = sample_g.size();
    e.t_hat_f = squared_norm(head_f);
    e.t_hat_g = squared_norm(head_g);
    e.r_hat_f = squared_norm(tail_f);
    e.r_hat_g = squared_norm(tail_g);
    e.numerator = std::sqrt(e.t_hat_f * e.t_hat_g) + std::sqrt(e.r_hat_f * e.r_hat_g);
    e.denom = dot(head_f, head_g) + dot(tail_f, tail_g);
    e.coeffs_f = cf.values;
    e.coeffs_g = cg.values;
    if (!(e.denom > 0.0)) throw UndefinedEstimate(std::move(e));
    e.value = std::log(e.numerator / e.denom);
    return e;
}

/// Common data interval for two samples: [min, max] of the pooled data padded
/// by `pad` times its span on each side (a unit-width window around a
/// constant sample).
inline BasisFamily padded_domain(const Series& a, const Series& b, BasisKind kind, double pad = 0.05) {
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    const double lo = std::min(*amin, *bmin);
    const double hi = std::max(*amax, *bmax);
    const double span = hi - lo;
    if (span == 0.0) return BasisFamily(kind, lo - 0.5, hi + 0.5);
    return BasisFamily(kind, lo - pad * span, hi + pad * span);
}

} // namespace cssharp
