#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cssharp/errors.hpp"

namespace cssharp {

/// Closed-form probability density on [0, 1], used as a quadrature oracle.
class DensityModel {
public:
    enum class Kind { uniform, linear, truncated_normal, tabulated };

    static DensityModel uniform() { return DensityModel(Kind::uniform); }

    /// f(u) = 2u.
    static DensityModel linear() { return DensityModel(Kind::linear); }

    /// Normal(mu, sigma^2) restricted and renormalized to [0, 1].
    static DensityModel truncated_normal(double mu, double sigma) {
        if (!(std::isfinite(mu) && sigma > 0.0 && std::isfinite(sigma)))
            throw InvalidArgument("truncated normal needs finite mu and sigma > 0");
        DensityModel m(Kind::truncated_normal);
        m.mu_ = mu;
        m.sigma_ = sigma;
        const double s = sigma * std::numbers::sqrt2;
        m.norm_ = 0.5 * (std::erf((1.0 - mu) / s) - std::erf(-mu / s));
        if (!(m.norm_ > 0.0)) throw InvalidArgument("truncated normal has no mass on [0, 1]");
        return m;
    }

    /// Piecewise-linear density through (knots[i], values[i]). Knots run from 0
    /// to 1 and are nondecreasing; a repeated knot encodes a jump (the right
    /// value wins at the knot itself). Must integrate to 1 within 1e-8.
    static DensityModel tabulated(std::vector<double> knots, std::vector<double> values) {
        if (knots.size() != values.size() || knots.size() < 2)
            throw InvalidArgument("tabulated density needs matching knot/value lists of length >= 2");
        if (knots.front() != 0.0 || knots.back() != 1.0)
            throw InvalidArgument("tabulated knots must start at 0 and end at 1");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (!(std::isfinite(values[i]) && values[i] >= 0.0))
                throw InvalidArgument("tabulated density values must be finite and nonnegative");
            if (i > 0 && knots[i] < knots[i - 1])
                throw InvalidArgument("tabulated knots must be nondecreasing");
        }
        double mass = 0.0;
        for (std::size_t i = 1; i < knots.size(); ++i)
            mass += 0.5 * (values[i] + values[i - 1]) * (knots[i] - knots[i - 1]);
        if (std::abs(mass - 1.0) > 1e-8)
            throw InvalidArgument("tabulated density integrates to " + std::to_string(mass) + ", not 1");
        DensityModel m(Kind::tabulated);
        m.knots_ = std::move(knots);
        m.values_ = std::move(values);
        return m;
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    /// Density at u; zero outside [0, 1].
    [[nodiscard]] double operator()(double u) const noexcept {
        if (u < 0.0 || u > 1.0) return 0.0;
        switch (kind_) {
        case Kind::uniform:
            return 1.0;
        case Kind::linear:
            return 2.0 * u;
        case Kind::truncated_normal: {
            const double z = (u - mu_) / sigma_;
            return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi) * norm_);
        }
        case Kind::tabulated:
            break;
        }
        // First segment [k_{i-1}, k_i) containing u, right-continuous at jumps.
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
        if (it == knots_.end()) return values_.back();
        const auto i = static_cast<std::size_t>(it - knots_.begin());
        const double span = knots_[i] - knots_[i - 1];
        const double t = (u - knots_[i - 1]) / span;
        return values_[i - 1] + t * (values_[i] - values_[i - 1]);
    }

    /// Interior points where the density is not smooth.
    [[nodiscard]] std::vector<double> breakpoints() const {
        if (kind_ != Kind::tabulated) return {};
        return {knots_.begin() + 1, knots_.end() - 1};
    }

    [[nodiscard]] std::string name() const {
        switch (kind_) {
        case Kind::uniform: return "uniform";
        case Kind::linear: return "linear";
        case Kind::truncated_normal:
            return "truncated_normal(" + std::to_string(mu_) + "," + std::to_string(sigma_) + ")";
        case Kind::tabulated: return "tabulated";
        }
        return "unknown";
    }

private:
    explicit DensityModel(Kind k) : kind_(k) {}

    Kind kind_;
    double mu_ = 0.0;
    double sigma_ = 1.0;
    double norm_ = 1.0;
    std::vector<double> knots_;
    std::vector<double> values_;
};

} // namespace cssharp
