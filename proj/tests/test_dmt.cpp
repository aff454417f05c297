#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oncsim/dmt.hpp"

using namespace oncsim;

TEST_CASE("closed-form tradeoff curves") {
    SECTION("network-coded relaying: d = 2 - 3r on [0, 2/3]") {
        REQUIRE(dmt_onc(0.0) == 2.0);
        REQUIRE(dmt_onc(2.0 / 3.0) == Catch::Approx(0.0).margin(1e-15));
        REQUIRE(dmt_onc(1.0 / 3.0) == Catch::Approx(1.0).epsilon(1e-15));
        REQUIRE_THROWS_AS(dmt_onc(0.7), parameter_error);
        REQUIRE_THROWS_AS(dmt_onc(-0.1), parameter_error);
    }
    SECTION("single link: d = 1 - r on [0, 1]") {
        REQUIRE(dmt_noncoop(0.0) == 1.0);
        REQUIRE(dmt_noncoop(1.0) == 0.0);
        REQUIRE(dmt_noncoop(0.5) == 0.5);
        REQUIRE_THROWS_AS(dmt_noncoop(1.1), parameter_error);
    }
    SECTION("repetition relaying: d = 2 - 4r on [0, 1/2]") {
        REQUIRE(dmt_conventional(0.0) == 2.0);
        REQUIRE(dmt_conventional(0.5) == 0.0);
        REQUIRE(dmt_conventional(0.25) == 1.0);
        REQUIRE_THROWS_AS(dmt_conventional(0.6), parameter_error);
    }
}

TEST_CASE("curve sampling") {
    SECTION("three points of the network-coded curve") {
        const auto pts = dmt_curve(DmtScheme::onc, 3);
        REQUIRE(pts.size() == 3);
        REQUIRE(pts[0].r == 0.0);
        REQUIRE(pts[0].d == 2.0);
        REQUIRE(pts[1].r == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        REQUIRE(pts[1].d == Catch::Approx(1.0).epsilon(1e-14));
        REQUIRE(pts[2].r == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
        REQUIRE(pts[2].d == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("endpoints of the other schemes") {
        const auto nc = dmt_curve(DmtScheme::noncoop, 2);
        REQUIRE(nc.front().d == 1.0);
        REQUIRE(nc.back().r == 1.0);
        REQUIRE(nc.back().d == 0.0);
        const auto conv = dmt_curve(DmtScheme::conventional, 2);
        REQUIRE(conv.front().d == 2.0);
        REQUIRE(conv.back().r == 0.5);
        REQUIRE(conv.back().d == 0.0);
    }
    SECTION("fewer than two points is an error") {
        REQUIRE_THROWS_AS(dmt_curve(DmtScheme::onc, 1), parameter_error);
    }
}

TEST_CASE("scheme dominance") {
    for (int i = 1; i <= 50; ++i) {
        const double r = 0.5 * i / 50.0;
        REQUIRE(dmt_onc(r) > dmt_conventional(r));
    }
    REQUIRE(dmt_onc(0.25) > dmt_noncoop(0.25));
    REQUIRE(dmt_onc(0.6) < dmt_noncoop(0.6));
}

TEST_CASE("numerical diversity estimates, frozen against the closed-form engine") {
    const std::vector<double> grid{1e8, 1e9, 1e10};
    SECTION("zero multiplexing gain approaches full diversity") {
        REQUIRE(estimate_diversity(0.0, grid, 7) == Catch::Approx(2.0).margin(1e-5));
    }
    SECTION("one-third multiplexing gain") {
        REQUIRE(estimate_diversity(1.0 / 3.0, grid, 7) ==
                Catch::Approx(0.99962230803162).epsilon(1e-10));
    }
    SECTION("r = 0.6 at this grid is still far from its asymptote") {
        REQUIRE(estimate_diversity(0.6, grid, 7) ==
                Catch::Approx(0.08572450772710).epsilon(1e-9));
    }
}

TEST_CASE("the estimate converges toward the closed form as the grid rises") {
    const std::vector<double> low{1e8, 1e9, 1e10};
    const std::vector<double> mid{1e9, 1e10, 1e11};
    const std::vector<double> high{1e17, 1e18, 1e19};
    for (double r : {1.0 / 3.0, 0.6}) {
        const double want = dmt_onc(r);
        const double err_low = std::abs(estimate_diversity(r, low, 7) - want);
        const double err_mid = std::abs(estimate_diversity(r, mid, 7) - want);
        const double err_high = std::abs(estimate_diversity(r, high, 7) - want);
        REQUIRE(err_mid <= err_low);
        REQUIRE(err_high <= err_mid);
    }
    // far enough out, the slow r = 0.6 estimate reaches its window
    REQUIRE(std::abs(estimate_diversity(0.6, high, 7) - 0.2) < 0.1);
    // at zero multiplexing gain the fixed-rate probe is near-exact on any
    // sane grid (the residual is dominated by rounding, not by finite SIR)
    REQUIRE(std::abs(estimate_diversity(0.0, mid, 7) - 2.0) < 1e-4);
}

TEST_CASE("estimator input validation") {
    const std::vector<double> grid{1e8, 1e9};
    REQUIRE_THROWS_AS(estimate_diversity(2.0 / 3.0, grid, 7), parameter_error);
    REQUIRE_THROWS_AS(estimate_diversity(0.1, std::vector<double>{1e8}, 7), parameter_error);
    REQUIRE_THROWS_AS(estimate_diversity(0.1, std::vector<double>{1e9, 1e8}, 7), parameter_error);
    REQUIRE_THROWS_AS(estimate_diversity(0.1, grid, 0), parameter_error);
    SECTION("outage underflow is reported, not silently fit") {
        const std::vector<double> huge{1e18, 1e19};
        REQUIRE_THROWS_AS(estimate_diversity(0.0, huge, 7), parameter_error);
    }
}
