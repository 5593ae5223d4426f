#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "cssharp/errors.hpp"
#include "cssharp/partition.hpp"
#include "cssharp/series.hpp"
#include "cssharp/summation.hpp"

namespace cssharp {

namespace tolerance {
/// Relative slack for the inequality chains, scaled by ||x|| ||y||.
inline constexpr double rel = 1e-9;
/// Idempotence, symmetry and residual orthogonality of projections.
inline constexpr double proj = 1e-10;
/// Max deviation of B^T B from the identity for orthonormal column sets.
inline constexpr double orth = 1e-10;
} // namespace tolerance

/// Dense column-major matrix; just enough for orthonormal column sets.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[c * rows + r]; }
    double operator()(std::size_t r, std::size_t c) const { return data[c * rows + r]; }
    [[nodiscard]] std::span<const double> column(std::size_t c) const {
        return {data.data() + c * rows, rows};
    }
    std::span<double> column(std::size_t c) { return {data.data() + c * rows, rows}; }
};

/// Largest |(B^T B - I)_ij|.
inline double orthonormality_defect(const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < b.cols; ++i)
        for (std::size_t j = i; j < b.cols; ++j) {
            const double g = dot(b.column(i), b.column(j));
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws
/// InvalidProjection when the columns are numerically rank deficient.
inline Matrix orthonormalize_columns(Matrix a) {
    for (std::size_t c = 0; c < a.cols; ++c) {
        auto col = a.column(c);
        const double original = std::sqrt(squared_norm(col));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                const auto prev = a.column(p);
                const double r = dot(prev, col);
                for (std::size_t i = 0; i < a.rows; ++i) col[i] -= r * prev[i];
            }
        }
        const double nrm = std::sqrt(squared_norm(col));
        if (!(nrm > 1e-12 * std::max(original, 1.0)))
            throw InvalidProjection("column " + std::to_string(c) + " is linearly dependent");
        for (auto& v : col) v /= nrm;
    }
    return a;
}

/// Projection variants. Indices are 0-based.
namespace proj {

struct Identity {};
struct Zero {};
/// Keeps coordinates 0..k-1.
struct CoordinatePrefix {
    std::size_t k;
};
/// Keeps the coordinates listed in `indices` (a set; order and repeats ignored).
struct CoordinateMask {
    std::vector<std::size_t> indices;
};
/// Projection onto span{(1,...,1)}.
struct MeanDirection {};
/// Projection onto span{v}, v nonzero.
struct SpanOf {
    Series v;
};

/// Projection B B^T onto the span of orthonormal columns B.
class OrthonormalColumns {
public:
    explicit OrthonormalColumns(Matrix b) : basis_(std::move(b)) {
        if (basis_.cols == 0 || basis_.rows == 0)
            throw InvalidProjection("orthonormal column set must be nonempty");
        if (basis_.cols > basis_.rows)
            throw InvalidProjection("more columns than rows cannot be orthonormal");
        for (double v : basis_.data)
            if (!std::isfinite(v)) throw InvalidProjection("non-finite basis entry");
        const double defect = orthonormality_defect(basis_);
        if (defect > tolerance::orth)
            throw InvalidProjection("columns are not orthonormal (max |B^T B - I| = " +
                                    std::to_string(defect) + ")");
    }
    [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }

private:
    Matrix basis_;
};

/// Conditional expectation onto a partition: replaces each entry with its
/// group mean.
struct PartitionAveraging {
    Partition partition;
};

} // namespace proj

using ProjectionSpec =
    std::variant<proj::Identity, proj::Zero, proj::CoordinatePrefix, proj::CoordinateMask,
                 proj::MeanDirection, proj::SpanOf, proj::OrthonormalColumns,
                 proj::PartitionAveraging>;

inline std::string describe(const ProjectionSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, proj::Identity>) return "identity";
            else if constexpr (std::is_same_v<T, proj::Zero>) return "zero";
            else if constexpr (std::is_same_v<T, proj::CoordinatePrefix>)
                return "prefix:" + std::to_string(s.k);
            else if constexpr (std::is_same_v<T, proj::CoordinateMask>) {
                std::string out = "mask:";
                for (std::size_t i = 0; i < s.indices.size(); ++i)
                    out += (i ? "," : "") + std::to_string(s.indices[i]);
                return out;
            } else if constexpr (std::is_same_v<T, proj::MeanDirection>) return "mean";
            else if constexpr (std::is_same_v<T, proj::SpanOf>) return "span";
            else if constexpr (std::is_same_v<T, proj::OrthonormalColumns>)
                return "basis:" + std::to_string(s.basis().rows) + "x" +
                       std::to_string(s.basis().cols);
            else return "partition:" + std::to_string(s.partition.group_count());
        },
        spec);
}

/// Checks that `spec` induces a valid projection on R^n.
inline void validate(const ProjectionSpec& spec, std::size_t n) {
    std::visit(
        [n](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, proj::CoordinatePrefix>) {
                if (s.k == 0) throw InvalidProjection("prefix length must be at least 1");
                if (s.k > n)
                    throw DimensionMismatch("prefix length " + std::to_string(s.k) +
                                            " exceeds dimension " + std::to_string(n));
            } else if constexpr (std::is_same_v<T, proj::CoordinateMask>) {
                for (auto i : s.indices)
                    if (i >= n)
                        throw DimensionMismatch("mask index " + std::to_string(i) +
                                                " out of range for dimension " + std::to_string(n));
            } else if constexpr (std::is_same_v<T, proj::SpanOf>) {
                if (s.v.size() != n) throw DimensionMismatch(n, s.v.size());
                if (squared_norm(s.v.span()) == 0.0)
                    throw InvalidProjection("span vector must be nonzero");
            } else if constexpr (std::is_same_v<T, proj::OrthonormalColumns>) {
                if (s.basis().rows != n) throw DimensionMismatch(n, s.basis().rows);
            } else if constexpr (std::is_same_v<T, proj::PartitionAveraging>) {
                if (s.partition.size() != n) throw DimensionMismatch(n, s.partition.size());
            }
        },
        spec);
}

namespace detail {

inline std::vector<double> group_means(std::span<const double> x, const Partition& p) {
    std::vector<double> out(x.size());
    std::vector<double> gathered;
    for (std::size_t g = 0; g < p.group_count(); ++g) {
        const auto& idx = p.members(g);
        gathered.resize(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) gathered[j] = x[idx[j]];
        const double m = pairwise_sum(gathered) / static_cast<double>(idx.size());
        for (auto i : idx) out[i] = m;
    }
    return out;
}

} // namespace detail

/// Returns Px.
inline Series apply_projection(const ProjectionSpec& spec, const Series& x) {
    const std::size_t n = x.size();
    validate(spec, n);
    return std::visit(
        [&](const auto& s) -> Series {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, proj::Identity>) {
                return x;
            } else if constexpr (std::is_same_v<T, proj::Zero>) {
                return Series(std::vector<double>(n, 0.0));
            } else if constexpr (std::is_same_v<T, proj::CoordinatePrefix>) {
                std::vector<double> out(x.begin(), x.end());
                std::fill(out.begin() + static_cast<std::ptrdiff_t>(s.k), out.end(), 0.0);
                return Series(std::move(out));
            } else if constexpr (std::is_same_v<T, proj::CoordinateMask>) {
                std::vector<double> out(n, 0.0);
                for (auto i : s.indices) out[i] = x[i];
                return Series(std::move(out));
            } else if constexpr (std::is_same_v<T, proj::MeanDirection>) {
                return Series(std::vector<double>(n, mean(x)));
            } else if constexpr (std::is_same_v<T, proj::SpanOf>) {
                const double c = dot(s.v.span(), x.span()) / squared_norm(s.v.span());
                return c * s.v;
            } else if constexpr (std::is_same_v<T, proj::OrthonormalColumns>) {
                const Matrix& b = s.basis();
                std::vector<double> coef(b.cols);
                for (std::size_t j = 0; j < b.cols; ++j) coef[j] = dot(b.column(j), x.span());
                std::vector<double> out(n);
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = pairwise_reduce(0, b.cols,
                                             [&](std::size_t j) { return b(i, j) * coef[j]; });
                return Series(std::move(out));
            } else {
                return Series(detail::group_means(x.span(), s.partition));
            }
        },
        spec);
}

/// Dense n x n matrix of the projection, built column by column from P e_j.
inline Matrix projection_matrix(const ProjectionSpec& spec, std::size_t n) {
    Matrix m(n, n);
    std::vector<double> unit(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = 1.0;
        const Series col = apply_projection(spec, Series(unit));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
        unit[j] = 0.0;
    }
    return m;
}

} // namespace cssharp
