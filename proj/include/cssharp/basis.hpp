#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "cssharp/errors.hpp"

namespace cssharp {

enum class BasisKind { cosine, trigonometric };

inline std::string to_string(BasisKind k) {
    return k == BasisKind::cosine ? "cosine" : "trigonometric";
}

/// Orthonormal basis (e_k)_{k>=1} of L^2[0,1] together with the affine map
/// from the data interval [lo, hi] onto [0, 1].
///
///   cosine:        e_1 = 1, e_k(u) = sqrt(2) cos(pi (k-1) u)
///   trigonometric: e_1 = 1, e_{2j}(u) = sqrt(2) cos(2 pi j u),
///                  e_{2j+1}(u) = sqrt(2) sin(2 pi j u)
class BasisFamily {
public:
    explicit BasisFamily(BasisKind kind = BasisKind::cosine, double lo = 0.0, double hi = 1.0)
        : kind_(kind), lo_(lo), hi_(hi) {
        if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
            throw InvalidArgument("basis domain must be a finite interval with lo < hi");
    }

    [[nodiscard]] BasisKind kind() const noexcept { return kind_; }
    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }

    /// Maps an observation into [0, 1]; observations outside [lo, hi] are rejected.
    [[nodiscard]] double to_unit(double x) const {
        if (!(x >= lo_ && x <= hi_))
            throw DomainError("observation " + std::to_string(x) + " outside [" +
                              std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
        return (x - lo_) / (hi_ - lo_);
    }

    /// e_k(u) without range checks; k >= 1, u in [0, 1].
    [[nodiscard]] double value(int k, double u) const noexcept {
        if (k == 1) return 1.0;
        if (kind_ == BasisKind::cosine)
            return std::numbers::sqrt2 * std::cos(std::numbers::pi * (k - 1) * u);
        const int j = k / 2;
        const double arg = 2.0 * std::numbers::pi * j * u;
        return std::numbers::sqrt2 * (k % 2 == 0 ? std::cos(arg) : std::sin(arg));
    }

    friend bool operator==(const BasisFamily&, const BasisFamily&) = default;

private:
    BasisKind kind_;
    double lo_;
    double hi_;
};

inline double basis_eval(const BasisFamily& basis, int k, double u) {
    if (k < 1) throw InvalidArgument("basis index must be at least 1");
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("basis argument " + std::to_string(u) + " outside [0, 1]");
    return basis.value(k, u);
}

} // namespace cssharp
