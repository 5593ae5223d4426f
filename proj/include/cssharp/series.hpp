#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cssharp/errors.hpp"
#include "cssharp/summation.hpp"

namespace cssharp {

/// A nonempty, fixed-length vector of finite reals. Serves both as a point of
/// R^n and as a sample of n observations.
class Series {
public:
    explicit Series(std::vector<double> values) : values_(std::move(values)) { validate(); }
    Series(std::initializer_list<double> values) : values_(values) { validate(); }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> span() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

    /// Contiguous sub-range [first, first + count).
    [[nodiscard]] Series slice(std::size_t first, std::size_t count) const {
        if (first + count > size())
            throw DimensionMismatch("slice [" + std::to_string(first) + ", " +
                                    std::to_string(first + count) + ") exceeds length " +
                                    std::to_string(size()));
        return Series(std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                          values_.begin() + static_cast<std::ptrdiff_t>(first + count)));
    }

    friend bool operator==(const Series&, const Series&) = default;

private:
    void validate() const {
        if (values_.empty()) throw EmptySample("series must have at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw InvalidArgument("non-finite value at index " + std::to_string(i));
    }

    std::vector<double> values_;
};

inline void require_same_length(const Series& x, const Series& y) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
}

inline double norm(const Series& x) { return std::sqrt(squared_norm(x.span())); }

inline double mean(const Series& x) {
    return pairwise_sum(x.span()) / static_cast<double>(x.size());
}

/// x - mean(x) elementwise.
inline Series centered(const Series& x) {
    const double m = mean(x);
    std::vector<double> out(x.begin(), x.end());
    for (auto& v : out) v -= m;
    return Series(std::move(out));
}

inline Series operator-(const Series& a, const Series& b) {
    require_same_length(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return Series(std::move(out));
}

inline Series operator+(const Series& a, const Series& b) {
    require_same_length(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return Series(std::move(out));
}

inline Series operator*(double s, const Series& a) {
    std::vector<double> out(a.begin(), a.end());
    for (auto& v : out) v *= s;
    return Series(std::move(out));
}

} // namespace cssharp
