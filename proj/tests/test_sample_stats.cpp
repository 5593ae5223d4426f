#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "cssharp/sample_stats.hpp"
#include "cssharp/simulation.hpp"

using namespace cssharp;
using Catch::Approx;

namespace {

/// Independent brute force for the lag-h split bound: plain long double
/// loops straight from the definition, no projection machinery.
struct BruteSplit {
    std::size_t k_star;
    long double d_min;
};

BruteSplit brute_force_split(const Series& x, const Series& y, std::size_t h) {
    const std::size_t n = x.size(), m = n - h;
    BruteSplit best{0, std::numeric_limits<long double>::infinity()};
    for (std::size_t k = 1; k <= m; ++k) {
        long double a1 = 0, z1 = 0, a2 = 0, z2 = 0;
        for (std::size_t t = 0; t < m; ++t) {
            const long double a = x[t], z = y[t + h];
            (t < k ? a1 : a2) += a * a;
            (t < k ? z1 : z2) += z * z;
        }
        const long double d = (std::sqrt(a1) * std::sqrt(z1) + std::sqrt(a2) * std::sqrt(z2)) / n;
        if (d < best.d_min) best = {k, d};
    }
    return best;
}

SplitSearch exhaustive_scan(const Series& x, const Series& y, std::size_t h, bool center) {
    SplitSearch best;
    bool found = false;
    for (std::size_t k = 1; k <= x.size() - h; ++k) {
        const auto b = cross_cov_bound(x, y, h, k, center);
        if (!found || b.d_bound < best.d_min) {
            best = {k, b.d_bound, b};
            found = true;
        }
    }
    return best;
}

} // namespace

TEST_CASE("sample mean bound", "[sample_stats]") {
    auto b = sample_mean_bound(Series{1, 1}, Series{1, 1});
    REQUIRE(b.lhs == 2.0);
    REQUIRE(b.rhs == 2.0);

    // 3 * (2 * 2) + sqrt(2) * sqrt(2)
    b = sample_mean_bound(Series{1, 2, 3}, Series{3, 2, 1});
    REQUIRE(b.lhs == 10.0);
    REQUIRE(b.rhs == Approx(14.0).epsilon(1e-15));

    b = sample_mean_bound(Series{1, -1}, Series{1, -1});
    REQUIRE(b.lhs == 2.0);
    REQUIRE(b.rhs == Approx(2.0).epsilon(1e-15));

    REQUIRE_THROWS_AS(sample_mean_bound(Series{1}, Series{1, 2}), DimensionMismatch);
}

TEST_CASE("zero-mean inputs give exactly the plain Cauchy-Schwarz bound", "[sample_stats]") {
    const Series x{1, -1, 2, -2};
    const Series y{3, 1, -1, -3};
    REQUIRE(mean(x) == 0.0);
    REQUIRE(mean(y) == 0.0);
    REQUIRE(sample_mean_bound(x, y).rhs == norm(x) * norm(y));
    const auto sq = sample_cov_squared_bound(x, y);
    REQUIRE(sq.rhs == squared_norm(x.span()) * squared_norm(y.span()));
}

TEST_CASE("sample covariance bound", "[sample_stats]") {
    auto b = sample_cov_bound(Series{1, 2, 3}, Series{1, 2, 3});
    REQUIRE(b.lhs == 2.0);
    REQUIRE(b.rhs == 2.0);

    b = sample_cov_bound(Series{4, 4, 4}, Series{1, 5, 2});
    REQUIRE(b.lhs == 0.0);
    REQUIRE(b.rhs == 0.0);

    b = sample_cov_bound(Series{1, 2, 3, 4}, Series{4, 3, 2, 1});
    REQUIRE(b.lhs == 5.0);
    REQUIRE(b.rhs == 5.0);

    // n sbar(x) sbar(y) route, sbar^2 = ||x||^2/n - xbar^2
    const Series x{0.5, 2.0, -1.0, 3.5, 7.0};
    const Series y{1.0, -2.0, 0.0, 4.0, 2.5};
    const double n = 5.0;
    const double sx = std::sqrt(squared_norm(x.span()) / n - mean(x) * mean(x));
    const double sy = std::sqrt(squared_norm(y.span()) / n - mean(y) * mean(y));
    b = sample_cov_bound(x, y);
    REQUIRE(b.rhs == Approx(n * sx * sy).epsilon(1e-12));
    REQUIRE(b.lhs == Approx(std::abs(dot(x.span(), y.span()) - n * mean(x) * mean(y))).epsilon(1e-12));
    REQUIRE(b.lhs <= b.rhs);
}

TEST_CASE("squared covariance bound", "[sample_stats]") {
    auto b = sample_cov_squared_bound(Series{1, 2, 3}, Series{3, 2, 1});
    REQUIRE(b.lhs == 100.0);
    REQUIRE(b.rhs == Approx(196.0).epsilon(1e-14));
    REQUIRE(b.rhs_squared == Approx(196.0).epsilon(1e-14));

    b = sample_cov_squared_bound(Series{1, 1}, Series{1, -1});
    REQUIRE(b.lhs == 0.0);
    REQUIRE(b.rhs == Approx(0.0).margin(1e-14));
}

TEST_CASE("squared bound: both right-hand forms agree and bracket", "[sample_stats][property]") {
    sim::Rng rng(4);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 40);
        const Series x = sim::uniform_series(n, -5, 10, rng);
        const Series y = sim::uniform_series(n, -5, 10, rng);
        const auto b = sample_cov_squared_bound(x, y);
        const double top = squared_norm(x.span()) * squared_norm(y.span());
        REQUIRE(std::abs(b.rhs - b.rhs_squared) <= tolerance::rel * top);
        REQUIRE(b.defect >= -tolerance::rel * top);
        REQUIRE(b.rhs <= top * (1 + tolerance::rel));

        const auto m = sample_mean_bound(x, y);
        REQUIRE(m.lhs <= m.rhs + tolerance::rel * std::sqrt(top));
        REQUIRE(m.rhs <= std::sqrt(top) * (1 + tolerance::rel));
        const auto c = sample_cov_bound(x, y);
        REQUIRE(c.lhs <= c.rhs * (1 + tolerance::rel) + 1e-12);
    }
}

TEST_CASE("expectation form of the bound", "[sample_stats]") {
    auto b = expectation_variant_bound(Series{1, 2, 3}, Series{3, 2, 1});
    REQUIRE(b.lhs == Approx(100.0 / 9.0));
    REQUIRE(b.rhs == Approx(196.0 / 9.0));

    b = expectation_variant_bound(Series{1, -1}, Series{2, -2});
    REQUIRE(b.rhs == Approx(1.0 * 4.0));

    // x = y: rhs - lhs equals the squaring-identity slack, which is >= 0
    sim::Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const Series x = sim::uniform_series(10, -1, 3, rng);
        const auto e = expectation_variant_bound(x, x);
        REQUIRE(e.rhs - e.lhs >= -1e-12);
        const Series y = sim::uniform_series(10, -1, 3, rng);
        const auto f = expectation_variant_bound(x, y);
        REQUIRE(f.lhs <= f.rhs + tolerance::rel * f.rhs);
    }
}

TEST_CASE("cross covariance worked examples", "[sample_stats][crosscov]") {
    auto b = cross_cov_bound(Series{1, 0, 1, 0}, Series{1, 0, 1, 0}, 1, 1, false);
    REQUIRE(b.r_bar == 0.0);
    REQUIRE(b.d_bound >= 0.0);

    b = cross_cov_bound(Series{1, 2, 3, 4}, Series{1, 2, 3, 4}, 1, 1, false);
    REQUIRE(b.r_bar == 5.0);
    REQUIRE(b.d_bound == Approx((1.0 * 2.0 + std::sqrt(13.0) * 5.0) / 4.0));
    REQUIRE(b.d_bound == Approx(5.0069436));
    REQUIRE(b.chain_holds());

    // full prefix: the projection is the identity on R^{n-h}
    b = cross_cov_bound(Series{1, 5, 2, 4, 3}, Series{2, 2, 7, 1, 0}, 2, 3);
    REQUIRE(b.d_bound == b.cs_bound);
}

TEST_CASE("cross covariance errors", "[sample_stats][crosscov][errors]") {
    const Series x{1, 2, 3, 4};
    REQUIRE_THROWS_AS(cross_cov_bound(x, x, 0, 1), LagOutOfRange);
    REQUIRE_THROWS_AS(cross_cov_bound(x, x, 4, 1), LagOutOfRange);
    REQUIRE_THROWS_AS(cross_cov_bound(x, x, 1, 0), SplitOutOfRange);
    REQUIRE_THROWS_AS(cross_cov_bound(x, x, 1, 4), SplitOutOfRange);
    REQUIRE_THROWS_AS(best_split(x, x, 5), LagOutOfRange);
    REQUIRE_THROWS_AS(lag_block_bound(x, x, 3), SplitOutOfRange);
}

TEST_CASE("k = h bound equals the block standard-deviation form", "[sample_stats][crosscov]") {
    sim::Rng rng(6);
    for (std::size_t n : {8u, 9u, 50u, 257u}) {
        const Series x = sim::ar1_series(n, 0.5, rng);
        const Series y = sim::ar1_series(n, 0.5, rng);
        for (std::size_t h = 1; 2 * h <= n; ++h) {
            for (bool center : {true, false}) {
                const auto b = cross_cov_bound(x, y, h, h, center);
                REQUIRE(lag_block_bound(x, y, h, center) == Approx(b.d_bound).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("best_split single candidate", "[sample_stats][crosscov]") {
    const auto s = best_split(Series{1, 2}, Series{3, 4}, 1);
    REQUIRE(s.k_star == 1);
}

TEST_CASE("best_split is tight on blockwise proportional data", "[sample_stats][crosscov]") {
    // lead block x_{1:4} = 2 * z_{1:4}, tail x_{5:9} = 0.5 * z_{5:9}, lag 2
    const std::size_t h = 2;
    const std::vector<double> z{1, -2, 3, 1.5, 4, -1, 2, 2, -3};
    std::vector<double> xv(z.size() + h, 0.0), yv(z.size() + h, 0.0);
    for (std::size_t t = 0; t < z.size(); ++t) {
        yv[t + h] = z[t];
        xv[t] = (t < 4 ? 2.0 : 0.5) * z[t];
    }
    yv[0] = 0.7;
    yv[1] = -1.1;
    xv[z.size()] = 3.0;
    xv[z.size() + 1] = -2.0;
    const Series x(xv), y(yv);

    const auto s = best_split(x, y, h, false);
    REQUIRE(s.k_star == 4);
    REQUIRE(s.d_min == Approx(std::abs(s.bound.r_bar)).epsilon(1e-14));
    const auto brute = brute_force_split(x, y, h);
    REQUIRE(brute.k_star == 4);
}

TEST_CASE("best_split agrees with exhaustive and brute-force scans", "[sample_stats][crosscov][property]") {
    sim::Rng rng(64);
    for (int rep = 0; rep < 20; ++rep) {
        const Series x = sim::gaussian_series(64, rng);
        const Series y = sim::gaussian_series(64, rng);
        for (std::size_t h : {1u, 3u, 10u, 63u}) {
            const auto s = best_split(x, y, h, false);
            const auto ex = exhaustive_scan(x, y, h, false);
            REQUIRE(s.k_star == ex.k_star);
            REQUIRE(s.d_min == ex.d_min);
            const auto brute = brute_force_split(x, y, h);
            REQUIRE(s.k_star == brute.k_star);
            REQUIRE(s.d_min == Approx(static_cast<double>(brute.d_min)).epsilon(1e-12));
            REQUIRE(s.d_min >= std::abs(s.bound.r_bar) - tolerance::rel * s.bound.cs_bound);
        }
    }
    for (std::size_t m = 1; m <= 256; m += 15) {
        const Series x = sim::uniform_series(m + 2, -1, 1, rng);
        const Series y = sim::uniform_series(m + 2, -1, 1, rng);
        const auto s = best_split(x, y, 2);
        const auto ex = exhaustive_scan(x, y, 2, true);
        REQUIRE(s.k_star == ex.k_star);
        REQUIRE(s.d_min == ex.d_min);
    }
}

TEST_CASE("best_split on all-zero data picks the smallest k", "[sample_stats][crosscov]") {
    const Series z{0, 0, 0, 0, 0, 0};
    const auto s = best_split(z, z, 2, false);
    REQUIRE(s.k_star == 1);
    REQUIRE(s.d_min == 0.0);
}

TEST_CASE("conditional expectation", "[sample_stats][conditioning]") {
    const Partition p(std::vector<std::int64_t>{0, 0, 1, 1});
    REQUIRE(conditional_expectation(Series{1, 2, 3, 4}, p) == Series{1.5, 1.5, 3.5, 3.5});
    REQUIRE(conditional_expectation(Series{1, 2, 3, 6}, Partition::trivial(4)) == Series{3, 3, 3, 3});
    REQUIRE(conditional_expectation(Series{1, 2, 3, 6}, Partition::singletons(4)) == Series{1, 2, 3, 6});
    REQUIRE_THROWS_AS(conditional_expectation(Series{1, 2}, p), DimensionMismatch);
}

TEST_CASE("conditional expectation is an orthogonal projection", "[sample_stats][conditioning][property]") {
    sim::Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 50);
        const Partition p = sim::random_partition(n, 1 + static_cast<std::size_t>(t % 7), rng);
        const Series x = sim::gaussian_series(n, rng);
        const Series y = sim::gaussian_series(n, rng);
        const Series ex = conditional_expectation(x, p);
        const Series eex = conditional_expectation(ex, p);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(eex[i] == Approx(ex[i]).margin(1e-12));
        // symmetric: <E x, y> = <x, E y>
        const Series ey = conditional_expectation(y, p);
        REQUIRE(dot(ex.span(), y.span()) == Approx(dot(x.span(), ey.span())).margin(1e-10));
        REQUIRE(squared_norm(ex.span()) <= squared_norm(x.span()) * (1 + 1e-12));
    }
}

TEST_CASE("conditional correlation special partitions", "[sample_stats][conditioning]") {
    sim::Rng rng(3);
    const auto [x, y] = sim::bivariate_normal(200, 0.4, rng);
    for (const Partition& p : {Partition::singletons(200), Partition::trivial(200)}) {
        const auto c = conditional_corr(x, y, p);
        REQUIRE(c.rho_p == c.rho);
        REQUIRE(c.d_denominator == c.sigma_x * c.sigma_y);
    }
}

TEST_CASE("conditional_corr and p_correlation agree", "[sample_stats][conditioning]") {
    const Series x{1, 2, 3, 4};
    const Series y{1, 2, 4, 3};
    const Partition p(std::vector<std::int64_t>{0, 0, 1, 1});
    const auto a = conditional_corr(x, y, p);
    const auto b = p_correlation(x, y, proj::PartitionAveraging{p});
    REQUIRE(a.rho_p == Approx(b.rho_p).epsilon(tolerance::rel));
    REQUIRE(a.d_denominator == Approx(b.d_denominator).epsilon(tolerance::rel));

    // Hand values: x' = (-1.5,-.5,.5,1.5), y' = (-1.5,-.5,1.5,.5), cov = 1, sigma^2 = 1.25,
    // E(x'|G) = (-1,-1,1,1) so sigma_E^2 = 1 for both, residual variance 0.25 each.
    REQUIRE(a.cov == Approx(1.0));
    REQUIRE(a.rho == Approx(0.8));
    REQUIRE(a.d_denominator == Approx(1.0 + 0.25));
    REQUIRE(a.rho_p == Approx(0.8));

    sim::Rng rng(55);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 60);
        const Series u = sim::gaussian_series(n, rng);
        const Series v = sim::gaussian_series(n, rng);
        const Partition q = sim::random_partition(n, 1 + static_cast<std::size_t>(t % 9), rng);
        const auto c1 = conditional_corr(u, v, q);
        const auto c2 = p_correlation(u, v, proj::PartitionAveraging{q});
        REQUIRE(std::abs(c1.rho_p - c2.rho_p) <= tolerance::rel);
        REQUIRE(c1.chain_holds());
    }
}

TEST_CASE("p_correlation", "[sample_stats][correlation]") {
    sim::Rng rng(9);
    const Series x = sim::gaussian_series(50, rng);
    const Series y = sim::gaussian_series(50, rng);
    const auto id = p_correlation(x, y, proj::Identity{});
    REQUIRE(id.rho_p == id.rho);

    const auto span = p_correlation(x, y, proj::SpanOf{centered(x)});
    REQUIRE(std::abs(span.rho_p) == Approx(1.0).epsilon(1e-12));
    REQUIRE(std::abs(span.rho) <= std::abs(span.rho_p));

    // uncorrelated centered pair with nonzero D
    const auto zero = p_correlation(Series{1, -1, 1, -1}, Series{1, 1, -1, -1}, proj::CoordinatePrefix{2});
    REQUIRE(zero.cov == 0.0);
    REQUIRE(zero.d_denominator > 0.0);
    REQUIRE(zero.rho_p == 0.0);

    // 0/0 convention: constant x makes D = 0
    const auto degenerate = p_correlation(Series{2, 2, 2}, Series{1, 2, 3}, proj::MeanDirection{});
    REQUIRE(degenerate.d_denominator == 0.0);
    REQUIRE(degenerate.rho_p == 0.0);
    REQUIRE(degenerate.rho == 0.0);
}

TEST_CASE("quantile partition", "[sample_stats][conditioning]") {
    const Series y{5, 1, 4, 2, 3, 6};
    const Partition p = quantile_partition(y, 3);
    REQUIRE(p.group_count() == 3);
    REQUIRE(p.group_of(1) == p.group_of(3)); // 1 and 2
    REQUIRE(p.group_of(4) == p.group_of(2)); // 3 and 4
    REQUIRE(p.group_of(0) == p.group_of(5)); // 5 and 6
    REQUIRE_THROWS_AS(quantile_partition(y, 0), InvalidArgument);
    REQUIRE_THROWS_AS(quantile_partition(y, 7), InvalidArgument);
}
