#pragma once

#include <cmath>
#include <cstddef>

#include "cssharp/projection.hpp"
#include "cssharp/series.hpp"
#include "cssharp/summation.hpp"

namespace cssharp {

/// One evaluation of the projection-refined Cauchy-Schwarz chain
///   |<x,y>| <= D(x,y|P) <= ||x|| ||y||
/// where D(x,y|P) = ||Px|| ||Py|| + ||x-Px|| ||y-Py||.
struct BoundReport {
    double inner = 0.0;      ///< <x,y>
    double abs_inner = 0.0;  ///< |<x,y>|
    double d_value = 0.0;    ///< D(x,y|P)
    double cs_value = 0.0;   ///< ||x|| ||y||
    double p_norm_x = 0.0;   ///< ||Px||
    double p_norm_y = 0.0;
    double residual_x = 0.0; ///< ||x - Px||
    double residual_y = 0.0;

    /// Both comparisons of the chain, each with slack tol * cs_value.
    [[nodiscard]] bool chain_holds(double tol = tolerance::rel) const noexcept {
        const double slack = tol * cs_value;
        return abs_inner <= d_value + slack && d_value <= cs_value + slack;
    }
};

/// Evaluates D(x,y|P) together with the two ends of the chain.
///
/// The four norms are computed in a fixed order (||Px||, ||Py||, then the
/// residuals) and combined as p_x*p_y + q_x*q_y, so swapping x and y yields a
/// bit-identical d_value. For P = Identity and P = Zero the result equals
/// cs_value exactly.
inline BoundReport d_function(const Series& x, const Series& y, const ProjectionSpec& spec) {
    require_same_length(x, y);
    const Series px = apply_projection(spec, x);
    const Series py = apply_projection(spec, y);

    BoundReport r;
    r.inner = dot(x.span(), y.span());
    r.abs_inner = std::abs(r.inner);
    r.p_norm_x = norm(px);
    r.p_norm_y = norm(py);
    r.residual_x = norm(x - px);
    r.residual_y = norm(y - py);
    r.d_value = r.p_norm_x * r.p_norm_y + r.residual_x * r.residual_y;
    r.cs_value = norm(x) * norm(y);
    return r;
}

struct ExtremalBounds {
    double lower = 0.0; ///< inf over projections, attained at P = span{x}
    double upper = 0.0; ///< sup over projections, attained at P = I (or 0)
};

inline ExtremalBounds extremal_bounds(const Series& x, const Series& y) {
    require_same_length(x, y);
    ExtremalBounds b;
    b.upper = d_function(x, y, proj::Identity{}).d_value;
    // <0,y> = 0, so the infimum is 0 even though span{0} is not a valid projection.
    b.lower = squared_norm(x.span()) == 0.0 ? 0.0 : d_function(x, y, proj::SpanOf{x}).d_value;
    return b;
}

/// ||C||_2^2 for the antisymmetric matrix c_ij = (x_i y_j - x_j y_i)/sqrt(2),
/// summed elementwise. Each unordered pair {i,j} contributes twice with a
/// factor 1/2, so the sum runs over i < j without the scaling.
inline double lagrange_defect(const Series& x, const Series& y) {
    require_same_length(x, y);
    const std::size_t n = x.size();
    return pairwise_reduce(0, n, [&](std::size_t i) {
        return pairwise_reduce(i + 1, n, [&](std::size_t j) {
            const double c = x[i] * y[j] - x[j] * y[i];
            return c * c;
        });
    });
}

/// ||x||^2 ||y||^2 - <x,y>^2, the closed form of lagrange_defect.
inline double lagrange_gap(const Series& x, const Series& y) {
    require_same_length(x, y);
    const double ip = dot(x.span(), y.span());
    return squared_norm(x.span()) * squared_norm(y.span()) - ip * ip;
}

/// Absolute defect of
///   (p_x p_y + q_x q_y)^2 + (p_x q_y - p_y q_x)^2 = (p_x^2 + q_x^2)(p_y^2 + q_y^2).
inline double squaring_identity_defect(const BoundReport& r) {
    const double px = r.p_norm_x, py = r.p_norm_y, qx = r.residual_x, qy = r.residual_y;
    const double a = px * py + qx * qy;
    const double b = px * qy - py * qx;
    return std::abs(a * a + b * b - (px * px + qx * qx) * (py * py + qy * qy));
}

inline double squaring_identity_defect(const Series& x, const Series& y,
                                       const ProjectionSpec& spec) {
    return squaring_identity_defect(d_function(x, y, spec));
}

/// Refined triangle inequality ||x+y|| <= mid <= ||x|| + ||y|| with
/// mid = sqrt((||Px||+||Py||)^2 + (||x-Px||+||y-Py||)^2).
struct TriangleBound {
    double lower = 0.0; ///< ||x + y||
    double mid = 0.0;
    double upper = 0.0; ///< ||x|| + ||y||

    [[nodiscard]] bool chain_holds(double tol = tolerance::rel) const noexcept {
        const double slack = tol * upper;
        return lower <= mid + slack && mid <= upper + slack;
    }
};

inline TriangleBound enhanced_triangle(const Series& x, const Series& y,
                                       const ProjectionSpec& spec) {
    const BoundReport r = d_function(x, y, spec);
    TriangleBound t;
    const double p = r.p_norm_x + r.p_norm_y;
    const double q = r.residual_x + r.residual_y;
    t.mid = std::sqrt(p * p + q * q);
    t.lower = norm(x + y);
    t.upper = norm(x) + norm(y);
    return t;
}

} // namespace cssharp
