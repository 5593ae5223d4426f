#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cssharp/summation.hpp"

using namespace cssharp;

TEST_CASE("pairwise sum matches an extended-precision reference", "[summation]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (std::size_t n : {1u, 7u, 8u, 9u, 100u, 4097u}) {
        std::vector<double> v(n);
        long double ref = 0.0L;
        for (auto& x : v) {
            x = dist(rng);
            ref += x;
        }
        REQUIRE(pairwise_sum(v) == Catch::Approx(static_cast<double>(ref)).epsilon(1e-13).margin(1e-9));
    }
}

TEST_CASE("pairwise sum of an even range longer than the leaf splits at the midpoint", "[summation]") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist;
    for (std::size_t half : {5u, 8u, 13u, 64u}) {
        std::vector<double> v(2 * half);
        for (auto& x : v) x = dist(rng);
        const std::span<const double> s(v);
        REQUIRE(pairwise_sum(s) == pairwise_sum(s.first(half)) + pairwise_sum(s.last(half)));
    }
}

TEST_CASE("pairwise sum is deterministic and order fixed", "[summation]") {
    std::vector<double> v{1e16, 1.0, -1e16, 1.0, 3.0, 1e-3, 7.0, -2.0, 0.5, 0.25};
    const double first = pairwise_sum(v);
    for (int i = 0; i < 10; ++i) REQUIRE(pairwise_sum(v) == first);
}

TEST_CASE("dot and squared norm", "[summation]") {
    std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    REQUIRE(dot(a, b) == 32.0);
    REQUIRE(squared_norm(a) == 14.0);
}

TEST_CASE("compensated sum recovers cancelled low-order terms", "[summation]") {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    REQUIRE(s.value() == 1000.0);
}
