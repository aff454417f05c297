#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oncsim/analytic.hpp"
#include "oncsim/dmt.hpp"
#include "oncsim/montecarlo.hpp"
#include "oncsim/packet.hpp"
#include "oncsim/scenario.hpp"

// Experiment orchestration behind the CLI: CSV emission for outage sweeps
// and tradeoff curves, the cross-validation report, and the protocol
// walk-through trace. All output is deterministic byte for byte given the
// same inputs and seed.

namespace oncsim {

inline constexpr const char* kCsvFormatVersion = "1";

// Shortest round-trip-safe decimal rendering, locale-independent.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct SweepOptions {
    std::vector<double> sir_grid_db{0, 5, 10, 15, 20, 25, 30};
    std::vector<double> rates{0.5, 1.0};
};

inline void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg,
                            const std::vector<SweepRow>& rows) {
    out << "# outage sweep, format v" << kCsvFormatVersion << "\n";
    out << "# seed = " << cfg.mc_seed << (cfg.seed_defaulted ? " (default)" : "") << "\n";
    out << "# trials = " << cfg.mc_trials << "\n";
    out << "# mode = " << cfg.mode_name() << "\n";
    out << "sir_db,rate,scheme,p_analytic,p_mc,mc_trials,ci_low,ci_high\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.sir_db) << ',' << format_number(r.rate) << ','
            << scheme_name(r.scheme) << ',' << format_number(r.p_analytic) << ','
            << format_number(r.mc.p_hat) << ',' << r.mc.trials << ','
            << format_number(r.mc.ci_low) << ',' << format_number(r.mc.ci_high) << "\n";
    }
}

inline std::vector<SweepRow> run_outage_sweep(const ScenarioConfig& cfg,
                                              const SweepOptions& opts) {
    cfg.validate();
    if (opts.sir_grid_db.empty()) throw parameter_error("sweep: SIR grid must not be empty");
    if (opts.rates.empty()) throw parameter_error("sweep: rate list must not be empty");
    std::vector<SweepCell> grid;
    grid.reserve(opts.sir_grid_db.size() * opts.rates.size());
    for (double rate : opts.rates) {
        for (double sir_db : opts.sir_grid_db) {
            grid.push_back({sir_db, rate});
        }
    }
    return sweep(grid, cfg.mc_config(Scheme::onc), cfg.k_interferers, cfg.rate_params());
}

inline void cmd_outage_sweep(const ScenarioConfig& cfg, const SweepOptions& opts,
                             const std::string& out_path) {
    const std::vector<SweepRow> rows = run_outage_sweep(cfg, opts);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    write_sweep_csv(out, cfg, rows);
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

struct DmtOptions {
    std::size_t n_points{9};
    std::vector<double> estimate_at; // multiplexing gains to estimate numerically
    std::size_t k_interferers{7};
    std::vector<double> sir_grid{1e8, 1e9, 1e10};
};

inline const char* dmt_scheme_name(DmtScheme s) {
    switch (s) {
    case DmtScheme::onc: return "onc";
    case DmtScheme::noncoop: return "noncoop";
    case DmtScheme::conventional: return "conventional";
    }
    return "?";
}

inline void write_dmt_csv(std::ostream& out, const DmtOptions& opts) {
    if (opts.n_points < 2) throw parameter_error("dmt: need at least two curve points");
    out << "# diversity-multiplexing tradeoff, format v" << kCsvFormatVersion << "\n";
    out << "# estimates: k_interferers = " << opts.k_interferers << ", sir grid =";
    for (double s : opts.sir_grid) out << ' ' << format_number(s);
    out << "\n";
    out << "scheme,r,d_closed_form,d_estimated\n";
    for (DmtScheme scheme : {DmtScheme::onc, DmtScheme::noncoop, DmtScheme::conventional}) {
        for (const DmtPoint& p : dmt_curve(scheme, opts.n_points)) {
            out << dmt_scheme_name(scheme) << ',' << format_number(p.r) << ','
                << format_number(p.d) << ",\n";
        }
    }
    for (double r : opts.estimate_at) {
        const double d_hat = estimate_diversity(r, opts.sir_grid, opts.k_interferers);
        out << "onc," << format_number(r) << ',' << format_number(dmt_onc(r)) << ','
            << format_number(d_hat) << "\n";
    }
}

inline void cmd_dmt(const DmtOptions& opts, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    write_dmt_csv(out, opts);
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

// ----------------------------------------------------------------------
// validate: cross-checks the independent computation routes against each
// other and reports one pass/fail line per check.

struct ValidateOptions {
    bool inject_fault{false}; // negative control: perturb one analytic value
    std::uint64_t packet_trials{100'000};
};

// Random SIR vectors with pairwise-distinct entries. The separation floor
// keeps the partial-fraction reference well-conditioned: its coefficients
// grow like (1/sep)^(k-1), so 20% spacing bounds the rounding
// amplification near 5^6 even at seven interferers.
inline std::vector<double> random_distinct_sirs(RandomStream& rng, std::size_t k,
                                                double min_rel_sep = 0.2) {
    std::vector<double> sirs;
    sirs.reserve(k);
    while (sirs.size() < k) {
        const double v = 0.1 + 1000.0 * rng.next_unit();
        bool separated = true;
        for (double prev : sirs) {
            if (std::abs(v - prev) < min_rel_sep * std::max(v, prev)) {
                separated = false;
                break;
            }
        }
        if (separated) sirs.push_back(v);
    }
    return sirs;
}

namespace detail {

struct CheckReporter {
    std::ostream& out;
    bool all_ok{true};

    void report(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!ok) all_ok = false;
    }
};

} // namespace detail

inline bool cmd_validate(const ScenarioConfig& cfg_in, std::ostream& report,
                         const ValidateOptions& opts = {}) {
    ScenarioConfig cfg = cfg_in;
    cfg.validate();
    // The closed forms hold in the interference-limited regime; validation
    // always compares there.
    if (cfg.mode != NoiseMode::interference_limited) {
        report << "# note: validation runs in interference-limited mode\n";
        cfg.mode = NoiseMode::interference_limited;
    }
    detail::CheckReporter rep{report};
    std::ostringstream os;

    const auto sirs_rs = cfg.sirs_bs_rs();
    const auto sirs_b1 = cfg.sirs_bs_u1();
    const auto sirs_r1 = cfg.sirs_rs_u1();
    const RateParams params = cfg.rate_params();
    const TrialProfiles profiles = cfg.profiles();

    // 1. state probabilities form a distribution
    {
        const auto ps = relay_state_probs(cfg.rate_bits, sirs_rs);
        const double sum = ps[0] + ps[1] + ps[2] + ps[3];
        const double err = std::abs(sum - 1.0);
        os.str("");
        os << "|sum - 1| = " << format_number(err) << " <= 1e-12";
        rep.report("relay-state probabilities sum to one", err <= 1e-12, os.str());
    }

    // 2. product form against the case-split reference
    {
        RandomStream rng(stream_key(cfg.mc_seed, {0xF0F0}));
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const std::size_t k = 1 + static_cast<std::size_t>(rng.next_u64() % 7);
            const std::vector<double> sirs = random_distinct_sirs(rng, k);
            const double t = 100.0 * rng.next_unit();
            const double a = ratio_tail(t, sirs);
            const double b = ratio_tail_reference(t, sirs);
            worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
        }
        os.str("");
        os << "worst relative difference = " << format_number(worst) << " <= 1e-09";
        rep.report("ratio-tail product form matches case-split form", worst <= 1e-9, os.str());
    }

    // 3./4. Monte Carlo against the closed forms
    const double p_onc = outage_onc(cfg.rate_bits, sirs_rs, sirs_b1, sirs_r1).total;
    const double p_nc = outage_noncoop(cfg.rate_bits, sirs_b1);
    auto mc_check = [&](const char* name, Scheme scheme, double p_true) {
        const OutageEstimate est = estimate_outage(cfg.mc_config(scheme), profiles, params);
        const double sigma = std::sqrt(p_true * (1.0 - p_true) / static_cast<double>(est.trials));
        const double margin = std::max(3.0 * sigma, 5e-4);
        const double diff = std::abs(est.p_hat - p_true);
        os.str("");
        os << "|p_mc - p_analytic| = " << format_number(diff)
           << " <= " << format_number(margin) << " (analytic " << format_number(p_true)
           << ", mc " << format_number(est.p_hat) << ", trials " << est.trials << ")";
        rep.report(name, diff <= margin, os.str());
    };
    mc_check("analytic vs monte carlo, network-coded relay", Scheme::onc,
             opts.inject_fault ? p_onc * 1.05 + 1e-3 : p_onc);
    mc_check("analytic vs monte carlo, non-cooperation", Scheme::noncoop, p_nc);

    // 5. relay state frequencies
    {
        const auto probs = relay_state_probs(cfg.rate_bits, sirs_rs);
        const auto freqs = estimate_state_frequencies(cfg.mc_config(Scheme::onc), profiles, params);
        double freq_sum = 0.0;
        bool ok = true;
        os.str("");
        for (int i = 0; i < 4; ++i) {
            freq_sum += freqs[i];
            const double sigma =
                std::sqrt(probs[i] * (1.0 - probs[i]) / static_cast<double>(cfg.mc_trials));
            const double diff = std::abs(freqs[i] - probs[i]);
            if (diff > std::max(3.0 * sigma, 1e-12)) ok = false;
            os << "s" << (i + 1) << " diff " << format_number(diff) << " (3s "
               << format_number(3.0 * sigma) << ") ";
        }
        if (std::abs(freq_sum - 1.0) > 1e-12) ok = false;
        os << "|sum - 1| = " << format_number(std::abs(freq_sum - 1.0));
        rep.report("relay-state frequencies within three sigma", ok, os.str());
    }

    // 6. packet-level protocol against the capacity predicate
    {
        const Bytes b1 = {0x4F, 0x4E, 0x43, 0x2D, 0x31, 0x01, 0x02, 0x03};
        const Bytes b2 = {0x4F, 0x4E, 0x43, 0x2D, 0x32, 0x04, 0x05, 0x06};
        std::uint64_t mismatches = 0;
        std::uint64_t state_disagreements = 0;
        for (std::uint64_t t = 0; t < opts.packet_trials; ++t) {
            const TrialDraw d = draw_trial(profiles, cfg.mc_seed, t);
            RandomStream noise(stream_key(cfg.mc_seed, {t, 0xB17F11B5}));
            const PacketTrialResult pr = run_packet_trial(d, params, b1, b2, noise);
            if (pr.relay_state != relay_state_of(d, params)) ++state_disagreements;
            if (pr.user1.ok() == trial_outage_onc(d, params)) ++mismatches;
        }
        os.str("");
        os << mismatches << " predicate mismatches (allowed 1), " << state_disagreements
           << " relay-state disagreements (allowed 0) over " << opts.packet_trials << " trials";
        rep.report("packet protocol matches capacity predicate",
                   mismatches <= 1 && state_disagreements == 0, os.str());
    }

    report << (rep.all_ok ? "validation passed\n" : "validation FAILED\n");
    return rep.all_ok;
}

// ----------------------------------------------------------------------
// packet demo: a readable walk-through of one protocol round with
// hand-forced hop failures.

inline Bytes parse_hex(const std::string& hex, const char* what) {
    if (hex.empty() || hex.size() % 2 != 0) {
        throw parameter_error(std::string(what) + ": need a nonempty even-length hex string");
    }
    auto nibble = [&](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw parameter_error(std::string(what) + ": invalid hex digit");
    };
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return out;
}

inline std::string to_hex(const Bytes& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

// Hop names accepted by the demo's fail list.
inline const std::set<std::string>& demo_hops() {
    static const std::set<std::string> hops = {"rs-n",  "rs-n1", "u1-n", "u1-n1",
                                               "u1-n2", "u2-n",  "u2-n1", "u2-n2"};
    return hops;
}

inline void cmd_packet_demo(const std::string& payload1_hex, const std::string& payload2_hex,
                            std::uint64_t seed, const std::set<std::string>& fail_hops,
                            std::ostream& out) {
    const Bytes b1 = parse_hex(payload1_hex, "payload 1");
    const Bytes b2 = parse_hex(payload2_hex, "payload 2");
    if (b1.size() != b2.size()) {
        throw framing_error("packet demo: payloads must have equal length");
    }
    for (const std::string& h : fail_hops) {
        if (!demo_hops().count(h)) {
            throw parameter_error("packet demo: unknown hop '" + h + "'");
        }
    }
    RandomStream noise(stream_key(seed, {0xDE30}));
    const Bytes wire1 = crc_encode(b1, CrcCode::code1).serialize();
    const Bytes wire2 = crc_encode(b2, CrcCode::code2).serialize();

    auto deliver = [&](const Bytes& sent, const char* hop) {
        if (fail_hops.count(hop)) return corrupt_word(sent, noise);
        return sent;
    };
    auto hop_tag = [&](const char* hop) {
        return fail_hops.count(hop) ? "corrupted" : "clean";
    };

    out << "payloads: b1 = " << to_hex(b1) << ", b2 = " << to_hex(b2) << " (" << b1.size()
        << " bytes + " << kCheckBytes << "-byte check)\n";

    out << "slot n   : source sends frame 1 (code 1): " << to_hex(wire1) << "\n";
    const ReceivedWord rs_n{deliver(wire1, "rs-n"), 0};
    const ReceivedWord u1_n{deliver(wire1, "u1-n"), 0};
    const ReceivedWord u2_n{deliver(wire1, "u2-n"), 0};
    out << "           relay rx " << hop_tag("rs-n") << ", code-1 check "
        << (crc_verify(rs_n.bytes, CrcCode::code1) ? "pass" : "fail") << "\n";

    out << "slot n+1 : source sends frame 2 (code 2): " << to_hex(wire2) << "\n";
    const ReceivedWord rs_n1{deliver(wire2, "rs-n1"), 1};
    const ReceivedWord u1_n1{deliver(wire2, "u1-n1"), 1};
    const ReceivedWord u2_n1{deliver(wire2, "u2-n1"), 1};
    out << "           relay rx " << hop_tag("rs-n1") << ", code-2 check "
        << (crc_verify(rs_n1.bytes, CrcCode::code2) ? "pass" : "fail") << "\n";

    const RelayAction action = relay_decide(rs_n, rs_n1);
    const char* action_name = "";
    switch (action.kind) {
    case RelayActionKind::xor_both: action_name = "xor-both"; break;
    case RelayActionKind::forward_first: action_name = "forward-first"; break;
    case RelayActionKind::forward_second: action_name = "forward-second"; break;
    case RelayActionKind::null_sequence: action_name = "null-sequence"; break;
    }
    const Bytes relay_word = action.transmitted(wire1.size());
    out << "slot n+2 : relay action " << action_name << ": " << to_hex(relay_word) << "\n";

    const ReceivedWord u1_n2{deliver(relay_word, "u1-n2"), 2};
    const ReceivedWord u2_n2{deliver(relay_word, "u2-n2"), 2};

    auto print_user = [&](const char* user, const DecodeResult& res) {
        out << user << "   : ";
        if (res.ok()) {
            out << "branch " << res.branch << " pass, recovered " << to_hex(*res.recovered)
                << "\n";
        } else {
            out << "no branch passed, message lost\n";
        }
    };
    print_user("user 1", user1_decode(u1_n, u1_n1, u1_n2));
    print_user("user 2", user2_decode(u2_n, u2_n1, u2_n2));
}

} // namespace oncsim
