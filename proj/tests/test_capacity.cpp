#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "oncsim/capacity.hpp"
#include "oncsim/random.hpp"

using namespace oncsim;

namespace {

SlotRealization slot(double desired, std::vector<double> ints = {}) {
    SlotRealization s;
    s.desired = desired;
    s.interferers = std::move(ints);
    return s;
}

RateParams il_params(double rate, double prefactor = kOncPrefactor) {
    RateParams p;
    p.rate = rate;
    p.prefactor = prefactor;
    p.mode = NoiseMode::interference_limited;
    return p;
}

} // namespace

TEST_CASE("mutual information basics") {
    const RateParams p = il_params(0.5);
    SECTION("zero desired gain carries nothing") {
        REQUIRE(mutual_information(slot(0.0, {1.0, 2.0}), p) == 0.0);
    }
    SECTION("unit SIR gives prefactor bits") {
        // desired 3 against interference 1 + 2
        REQUIRE(mutual_information(slot(3.0, {1.0, 2.0}), p) ==
                Catch::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SECTION("finite-snr keeps the noise term") {
        RateParams fs = p;
        fs.mode = NoiseMode::finite_snr;
        fs.snr = 1.0;
        REQUIRE(mutual_information(slot(3.0, {1.0, 2.0}), fs) ==
                Catch::Approx((2.0 / 3.0) * std::log2(1.0 + 3.0 / 4.0)).epsilon(1e-12));
    }
    SECTION("no interference in the interference-limited mode is unbounded") {
        REQUIRE(std::isinf(mutual_information(slot(3.0), p)));
    }
}

TEST_CASE("mutual information is monotone in the gains") {
    const RateParams p = il_params(0.5);
    RandomStream rng(stream_key(77, {1}));
    for (int i = 0; i < 200; ++i) {
        const double g = 5.0 * rng.next_unit();
        std::vector<double> ints = {rng.next_unit(), rng.next_unit()};
        const double base = mutual_information(slot(g, ints), p);
        REQUIRE(mutual_information(slot(g + 0.5, ints), p) >= base);
        ints[0] += 0.5;
        REQUIRE(mutual_information(slot(g, ints), p) <= base);
    }
}

TEST_CASE("outage threshold equals the SIR threshold form") {
    // prefactor 2/3: MI < R exactly when SIR < 2^(3R/2) - 1
    const RateParams p = il_params(1.0);
    RandomStream rng(stream_key(78, {1}));
    const double t = std::exp2(1.5 * p.rate) - 1.0;
    for (int i = 0; i < 500; ++i) {
        const double sir = 4.0 * rng.next_unit();
        const double mi = mutual_information(slot(sir, {1.0}), p);
        REQUIRE((mi < p.rate) == (sir < t));
    }
}

TEST_CASE("relay state classification follows the two slot outcomes") {
    REQUIRE(classify_relay_state(0.9, 0.9, 0.5) == RelayState::decoded_both);
    REQUIRE(classify_relay_state(0.9, 0.1, 0.5) == RelayState::decoded_first);
    REQUIRE(classify_relay_state(0.1, 0.9, 0.5) == RelayState::decoded_second);
    REQUIRE(classify_relay_state(0.1, 0.1, 0.5) == RelayState::decoded_none);
    SECTION("equality with the rate counts as failure") {
        REQUIRE(classify_relay_state(0.5, 0.9, 0.5) == RelayState::decoded_second);
        REQUIRE(classify_relay_state(0.5, 0.5, 0.5) == RelayState::decoded_none);
    }
    SECTION("exactly one state holds for random inputs") {
        RandomStream rng(stream_key(79, {1}));
        for (int i = 0; i < 200; ++i) {
            const RelayState s = classify_relay_state(rng.next_unit(), rng.next_unit(), 0.5);
            REQUIRE(state_index(s) >= 1);
            REQUIRE(state_index(s) <= 4);
        }
    }
}

TEST_CASE("conditional end-to-end mutual information per relay state") {
    REQUIRE(user1_conditional_mi(RelayState::decoded_both, 0.4, 0.9, 0.7) == 0.7);
    REQUIRE(user1_conditional_mi(RelayState::decoded_first, 0.4, 0.9, 0.7) == 0.7);
    REQUIRE(user1_conditional_mi(RelayState::decoded_second, 0.4, 0.9, 0.7) == 0.4);
    REQUIRE(user1_conditional_mi(RelayState::decoded_none, 0.4, 0.9, 0.7) == 0.4);
}

TEST_CASE("relay help never hurts") {
    RandomStream rng(stream_key(80, {2}));
    for (int i = 0; i < 500; ++i) {
        const double a = rng.next_unit(), b = rng.next_unit(), c = rng.next_unit();
        REQUIRE(user1_conditional_mi(RelayState::decoded_both, a, b, c) >=
                user1_conditional_mi(RelayState::decoded_second, a, b, c));
        REQUIRE(user1_conditional_mi(RelayState::decoded_first, a, b, c) >=
                user1_conditional_mi(RelayState::decoded_none, a, b, c));
    }
}

TEST_CASE("trial outage for the network-coded scheme") {
    const RateParams p = il_params(1.0); // SIR threshold 2^1.5 - 1 = 1.8284
    TrialDraw d;
    SECTION("zero rate never causes outage with positive gains") {
        d.relay = {slot(1.0, {1.0}), slot(1.0, {1.0})};
        d.user1 = {slot(1.0, {1.0}), slot(1.0, {1.0}), slot(1.0, {1.0})};
        REQUIRE_FALSE(trial_outage_onc(d, il_params(0.0)));
    }
    SECTION("all desired gains zero is always an outage at positive rate") {
        d.relay = {slot(0.0, {1.0}), slot(0.0, {1.0})};
        d.user1 = {slot(0.0, {1.0}), slot(0.0, {1.0}), slot(0.0, {1.0})};
        REQUIRE(trial_outage_onc(d, p));
    }
    SECTION("a relay that decoded only the first message can save the user") {
        // relay: slot n SIR 3 decodes, slot n+1 SIR 1 does not
        d.relay = {slot(3.0, {1.0}), slot(1.0, {1.0})};
        // user: direct slot fails (SIR 1), relay slot decodes (SIR 5)
        d.user1 = {slot(1.0, {1.0}), slot(1.0, {1.0}), slot(5.0, {1.0})};
        REQUIRE(relay_state_of(d, p) == RelayState::decoded_first);
        REQUIRE_FALSE(trial_outage_onc(d, p));
        // without the relay branch the direct slot alone is an outage
        REQUIRE(trial_outage_noncoop(d.user1[0], p));
    }
}

TEST_CASE("non-cooperative outage boundary") {
    const RateParams p = il_params(1.0);
    SECTION("zero rate never fails") { REQUIRE_FALSE(trial_outage_noncoop(slot(1.0, {1.0}), il_params(0.0))); }
    SECTION("SIR exactly at the threshold counts as outage") {
        // full-rate threshold 2^1 - 1 = 1
        REQUIRE(trial_outage_noncoop(slot(1.0, {1.0}), p));
    }
    SECTION("SIR above the threshold decodes") {
        REQUIRE_FALSE(trial_outage_noncoop(slot(3.0, {1.0}), p));
    }
}

TEST_CASE("the mirrored user-2 rule swaps the slot roles") {
    const RateParams p = il_params(1.0);
    TrialDraw d;
    // relay decodes only the second message; user 2's direct slot fails but
    // the relay slot carries its message
    d.relay = {slot(1.0, {1.0}), slot(3.0, {1.0})};
    d.user2 = {slot(1.0, {1.0}), slot(1.0, {1.0}), slot(5.0, {1.0})};
    REQUIRE(relay_state_of(d, p) == RelayState::decoded_second);
    REQUIRE_FALSE(trial_outage_onc_user2(d, p));
    // flip the relay state: no help for user 2
    d.relay = {slot(3.0, {1.0}), slot(1.0, {1.0})};
    REQUIRE(trial_outage_onc_user2(d, p));
}
