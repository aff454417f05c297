#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oncsim/random.hpp"

using namespace oncsim;

TEST_CASE("streams with equal keys replay the identical sequence") {
    RandomStream a(stream_key(42, {1, 2, 3}));
    RandomStream b(stream_key(42, {1, 2, 3}));
    for (int i = 0; i < 100; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("any key component separates streams") {
    RandomStream base(stream_key(42, {1, 2, 3}));
    RandomStream seed(stream_key(43, {1, 2, 3}));
    RandomStream part(stream_key(42, {1, 2, 4}));
    const auto v = base.next_u64();
    REQUIRE(v != seed.next_u64());
    REQUIRE(v != part.next_u64());
}

TEST_CASE("unit draws live in (0, 1]") {
    RandomStream s(stream_key(7, {0}));
    for (int i = 0; i < 10000; ++i) {
        const double u = s.next_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("sample_exponential rejects a nonpositive mean") {
    RandomStream s(stream_key(1, {}));
    REQUIRE_THROWS_AS(sample_exponential(0.0, s), parameter_error);
    REQUIRE_THROWS_AS(sample_exponential(-1.0, s), parameter_error);
}

TEST_CASE("sample_exponential is deterministic for a fixed stream") {
    RandomStream a(stream_key(5, {10}));
    RandomStream b(stream_key(5, {10}));
    const double x = sample_exponential(1.0, a);
    REQUIRE(x == sample_exponential(1.0, b));
    REQUIRE(x >= 0.0);
}

TEST_CASE("sample mean of a million exponential draws matches the mean") {
    RandomStream s(stream_key(2024, {1}));
    const int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_exponential(2.0, s);
    REQUIRE(std::abs(sum / n - 2.0) < 0.01);
}

TEST_CASE("Kolmogorov-Smirnov distance to the unit exponential is small") {
    RandomStream s(stream_key(99, {3}));
    const std::size_t n = 100'000;
    std::vector<double> x(n);
    for (auto& v : x) v = sample_exponential(1.0, s);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = 1.0 - std::exp(-x[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(cdf - lo), std::abs(cdf - hi)});
    }
    // 1% critical value: 1.6276 / sqrt(n)
    REQUIRE(d < 1.6276 / std::sqrt(static_cast<double>(n)));
}
