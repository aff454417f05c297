#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "oncsim/scenario.hpp"

using namespace oncsim;

namespace {

ScenarioConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test");
}

} // namespace

TEST_CASE("minimal config with defaults") {
    const ScenarioConfig cfg = parse("k_interferers = 7\n"
                                     "rate_bits = 0.5\n"
                                     "sir_db = 10\n");
    REQUIRE(cfg.k_interferers == 7);
    REQUIRE(cfg.rate_bits == 0.5);
    REQUIRE(cfg.equal_sir_db == 10.0);
    REQUIRE(cfg.mode == NoiseMode::interference_limited);
    REQUIRE(cfg.mc_trials == 1'000'000);
    REQUIRE(cfg.mc_seed == kDefaultSeed);
    REQUIRE(cfg.seed_defaulted);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
    const ScenarioConfig cfg = parse("# scenario\n"
                                     "\n"
                                     "  k_interferers =  3   # three interferers\n"
                                     "rate_bits=1.0\n"
                                     "sir_db = 15 \n"
                                     "mc.seed = 99\n");
    REQUIRE(cfg.k_interferers == 3);
    REQUIRE(cfg.mc_seed == 99);
    REQUIRE_FALSE(cfg.seed_defaulted);
}

TEST_CASE("per-link SIR vectors") {
    const ScenarioConfig cfg = parse("k_interferers = 3\n"
                                     "rate_bits = 0.5\n"
                                     "sir_db_bs_rs = 10, 11, 12\n"
                                     "sir_db_bs_u1 = 9, 9, 9\n"
                                     "sir_db_rs_u1 = 13, 14, 15\n");
    REQUIRE(cfg.sirs_bs_rs()[1] == Catch::Approx(db_to_linear(11.0)).epsilon(1e-12));
    REQUIRE(cfg.sirs_bs_u1()[2] == Catch::Approx(db_to_linear(9.0)).epsilon(1e-12));
    const TrialProfiles p = cfg.profiles();
    REQUIRE(p.interferer_count() == 3);
    REQUIRE(p.rs_u1.interferer_means[0] ==
            Catch::Approx(1.0 / db_to_linear(13.0)).epsilon(1e-12));
}

TEST_CASE("config rejections name the offending key") {
    SECTION("wrong vector length") {
        const std::string text = "k_interferers = 3\n"
                                 "rate_bits = 0.5\n"
                                 "sir_db_bs_rs = 10, 11, 12\n"
                                 "sir_db_bs_u1 = 9, 9\n"
                                 "sir_db_rs_u1 = 13, 14, 15\n";
        REQUIRE_THROWS_WITH(parse(text), Catch::Matchers::ContainsSubstring("sir_db_bs_u1"));
    }
    SECTION("unknown key") {
        REQUIRE_THROWS_WITH(parse("k_interferers = 3\nsir_db = 10\nbogus_key = 1\n"),
                            Catch::Matchers::ContainsSubstring("bogus_key"));
    }
    SECTION("bad number") {
        REQUIRE_THROWS_WITH(parse("k_interferers = 3\nsir_db = ten\n"),
                            Catch::Matchers::ContainsSubstring("sir_db"));
    }
    SECTION("missing SIR specification") {
        REQUIRE_THROWS_AS(parse("k_interferers = 3\nrate_bits = 0.5\n"), config_error);
    }
    SECTION("both scalar and vector SIRs") {
        const std::string text = "k_interferers = 1\n"
                                 "sir_db = 10\n"
                                 "sir_db_bs_rs = 10\n"
                                 "sir_db_bs_u1 = 10\n"
                                 "sir_db_rs_u1 = 10\n";
        REQUIRE_THROWS_AS(parse(text), config_error);
    }
    SECTION("zero interferers") {
        REQUIRE_THROWS_AS(parse("k_interferers = 0\nsir_db = 10\n"), config_error);
    }
    SECTION("malformed line") {
        REQUIRE_THROWS_AS(parse("k_interferers\n"), config_error);
    }
    SECTION("bad mode") {
        REQUIRE_THROWS_WITH(parse("k_interferers = 3\nsir_db = 10\nmode = quiet\n"),
                            Catch::Matchers::ContainsSubstring("mode"));
    }
}

TEST_CASE("finite-snr mode parses its SNR") {
    const ScenarioConfig cfg = parse("k_interferers = 2\n"
                                     "sir_db = 10\n"
                                     "mode = finite-snr\n"
                                     "snr_db = 20\n");
    REQUIRE(cfg.mode == NoiseMode::finite_snr);
    REQUIRE(cfg.rate_params().snr == Catch::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("missing config file") {
    REQUIRE_THROWS_AS(load_config("/nonexistent/path.cfg"), config_error);
}
