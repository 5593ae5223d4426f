#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace cssharp {

/// Leaf size of the pairwise cascade. Ranges at or below this length are
/// summed left to right; longer ranges split at floor(n/2).
inline constexpr std::size_t pairwise_leaf = 8;

/// Pairwise (cascade) sum of term(i) for i in [first, last).
///
/// The recursion split is a pure function of the range bounds, so the result
/// is bit-for-bit reproducible for a given input regardless of where it is
/// called from. A consequence used elsewhere: for an even length 2m with
/// 2m > pairwise_leaf, the sum equals sum(first half) + sum(second half)
/// exactly.
template <class Term>
double pairwise_reduce(std::size_t first, std::size_t last, const Term& term) {
    const std::size_t n = last - first;
    if (n <= pairwise_leaf) {
        double acc = 0.0;
        for (std::size_t i = first; i < last; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = first + n / 2;
    return pairwise_reduce(first, mid, term) + pairwise_reduce(mid, last, term);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_reduce(0, v.size(), [&](std::size_t i) { return v[i]; });
}

/// Caller guarantees equal lengths.
inline double dot(std::span<const double> a, std::span<const double> b) {
    return pairwise_reduce(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

inline double squared_norm(std::span<const double> a) {
    return pairwise_reduce(0, a.size(), [&](std::size_t i) { return a[i] * a[i]; });
}

/// Neumaier-compensated running sum. Used where a sequential prefix scan is
/// required (prefix sums of squares in the lag-split search).
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace cssharp
