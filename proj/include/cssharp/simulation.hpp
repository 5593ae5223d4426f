#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cssharp/partition.hpp"
#include "cssharp/projection.hpp"
#include "cssharp/series.hpp"

// Seeded generators for randomized checks and synthetic data. All of them
// draw from std::mt19937_64, so a fixed seed gives a fixed stream.

namespace cssharp::sim {

using Rng = std::mt19937_64;

inline Series uniform_series(std::size_t n, double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return Series(std::move(v));
}

inline Series gaussian_series(std::size_t n, Rng& rng) {
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return Series(std::move(v));
}

/// Stationary AR(1): x_t = phi x_{t-1} + e_t, started from its stationary law.
inline Series ar1_series(std::size_t n, double phi, Rng& rng) {
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    double prev = dist(rng) / std::sqrt(1.0 - phi * phi);
    for (auto& x : v) {
        prev = phi * prev + dist(rng);
        x = prev;
    }
    return Series(std::move(v));
}

/// Standard bivariate normal pair with correlation rho.
inline std::pair<Series, Series> bivariate_normal(std::size_t n, double rho, Rng& rng) {
    std::normal_distribution<double> dist;
    std::vector<double> x(n), y(n);
    const double c = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = dist(rng);
        x[i] = rho * y[i] + c * dist(rng);
    }
    return {Series(std::move(x)), Series(std::move(y))};
}

/// Draws from the density 2u on [0, 1] by inversion.
inline Series linear_density_sample(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = std::sqrt(dist(rng));
    return Series(std::move(v));
}

/// Labels drawn uniformly from `groups` values; empty labels simply vanish,
/// so the realized group count may be smaller.
inline Partition random_partition(std::size_t n, std::size_t groups, Rng& rng) {
    std::uniform_int_distribution<std::int64_t> dist(0, static_cast<std::int64_t>(groups) - 1);
    std::vector<std::int64_t> labels(n);
    for (auto& l : labels) l = dist(rng);
    return Partition(labels);
}

/// n x m matrix with orthonormal columns from the QR factor of a Gaussian matrix.
inline Matrix random_orthonormal(std::size_t n, std::size_t m, Rng& rng) {
    std::normal_distribution<double> dist;
    Matrix a(n, m);
    for (auto& v : a.data) v = dist(rng);
    return orthonormalize_columns(std::move(a));
}

/// One of the eight projection variants on R^n, chosen uniformly.
inline ProjectionSpec random_projection(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<int> variant(0, 7);
    std::uniform_int_distribution<std::size_t> dim(1, n);
    switch (variant(rng)) {
    case 0: return proj::Identity{};
    case 1: return proj::Zero{};
    case 2: return proj::CoordinatePrefix{dim(rng)};
    case 3: {
        std::bernoulli_distribution keep(0.5);
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (keep(rng)) idx.push_back(i);
        return proj::CoordinateMask{std::move(idx)};
    }
    case 4: return proj::MeanDirection{};
    case 5: {
        Series v = gaussian_series(n, rng);
        while (squared_norm(v.span()) == 0.0) v = gaussian_series(n, rng);
        return proj::SpanOf{std::move(v)};
    }
    case 6: return proj::OrthonormalColumns(random_orthonormal(n, dim(rng), rng));
    default: return proj::PartitionAveraging{random_partition(n, dim(rng), rng)};
    }
}

} // namespace cssharp::sim
