#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oncsim/capacity.hpp"
#include "oncsim/errors.hpp"
#include "oncsim/fading.hpp"
#include "oncsim/montecarlo.hpp"

// Scenario files are flat key = value text. Keys:
//
//   k_interferers   number of cochannel interferers K (>= 1)
//   rate_bits       target data rate, bit/s/Hz
//   sir_db          equal per-interferer SIR for every link, dB
//   sir_db_bs_rs    or per-link SIR vectors (comma-separated, K entries
//   sir_db_bs_u1    each) for the source-relay, source-user and
//   sir_db_rs_u1    relay-user links
//   mode            interference-limited (default) or finite-snr
//   snr_db          transmit SNR in dB, finite-snr mode only
//   mc.trials       Monte Carlo trials per point (default 1000000)
//   mc.seed         master seed (default applied and recorded if absent)
//   mc.workers      worker threads, 0 = all hardware threads
//
// '#' starts a comment; blank lines are ignored.

namespace oncsim {

inline constexpr std::uint64_t kDefaultSeed = 20260809;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct ScenarioConfig {
    std::size_t k_interferers{7};
    double rate_bits{0.5};
    std::optional<double> equal_sir_db;
    std::vector<double> sir_db_bs_rs;
    std::vector<double> sir_db_bs_u1;
    std::vector<double> sir_db_rs_u1;
    NoiseMode mode{NoiseMode::interference_limited};
    double snr_db{20.0};
    std::uint64_t mc_trials{1'000'000};
    std::uint64_t mc_seed{kDefaultSeed};
    bool seed_defaulted{true};
    unsigned workers{0};

    void validate() const {
        if (k_interferers == 0) throw config_error("k_interferers must be at least 1");
        if (!(rate_bits >= 0.0)) throw config_error("rate_bits must be nonnegative");
        if (mc_trials == 0) throw config_error("mc.trials must be at least 1");
        const bool has_vectors =
            !sir_db_bs_rs.empty() || !sir_db_bs_u1.empty() || !sir_db_rs_u1.empty();
        if (equal_sir_db && has_vectors) {
            throw config_error("give either sir_db or the per-link SIR vectors, not both");
        }
        if (!equal_sir_db && !has_vectors) {
            throw config_error("missing SIR specification: set sir_db or the per-link vectors");
        }
        if (has_vectors) {
            auto check = [&](const std::vector<double>& v, const char* key) {
                if (v.size() != k_interferers) {
                    std::ostringstream os;
                    os << key << " must list exactly k_interferers = " << k_interferers
                       << " values, got " << v.size();
                    throw config_error(os.str());
                }
            };
            check(sir_db_bs_rs, "sir_db_bs_rs");
            check(sir_db_bs_u1, "sir_db_bs_u1");
            check(sir_db_rs_u1, "sir_db_rs_u1");
        }
    }

    std::vector<double> sirs_bs_rs() const { return link_sirs(sir_db_bs_rs); }
    std::vector<double> sirs_bs_u1() const { return link_sirs(sir_db_bs_u1); }
    std::vector<double> sirs_rs_u1() const { return link_sirs(sir_db_rs_u1); }

    TrialProfiles profiles() const {
        TrialProfiles p;
        p.bs_rs = profile_from_sirs(sirs_bs_rs());
        p.bs_u1 = profile_from_sirs(sirs_bs_u1());
        p.rs_u1 = profile_from_sirs(sirs_rs_u1());
        p.bs_u2 = p.bs_u1;
        p.rs_u2 = p.rs_u1;
        return p;
    }

    RateParams rate_params() const {
        RateParams p;
        p.rate = rate_bits;
        p.prefactor = kOncPrefactor;
        p.mode = mode;
        p.snr = db_to_linear(snr_db);
        return p;
    }

    McConfig mc_config(Scheme scheme) const {
        McConfig mc;
        mc.trials = mc_trials;
        mc.master_seed = mc_seed;
        mc.scheme = scheme;
        mc.workers = workers;
        return mc;
    }

    const char* mode_name() const {
        return mode == NoiseMode::interference_limited ? "interference-limited" : "finite-snr";
    }

private:
    std::vector<double> link_sirs(const std::vector<double>& db_vector) const {
        std::vector<double> out;
        out.reserve(k_interferers);
        if (equal_sir_db) {
            out.assign(k_interferers, db_to_linear(*equal_sir_db));
        } else {
            for (double db : db_vector) out.push_back(db_to_linear(db));
        }
        return out;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid numeric value for key '" + key + "': " + value);
    }
}

inline std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid integer value for key '" + key + "': " + value);
    }
}

inline std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw config_error("empty entry in list for key '" + key + "'");
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) throw config_error("empty list for key '" + key + "'");
    return out;
}

} // namespace detail

inline ScenarioConfig parse_config(std::istream& in, const std::string& origin) {
    ScenarioConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": expected key = value";
            throw config_error(os.str());
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) throw config_error("empty value for key '" + key + "'");

        if (key == "k_interferers") {
            cfg.k_interferers = static_cast<std::size_t>(detail::parse_u64(value, key));
        } else if (key == "rate_bits") {
            cfg.rate_bits = detail::parse_double(value, key);
        } else if (key == "sir_db") {
            cfg.equal_sir_db = detail::parse_double(value, key);
        } else if (key == "sir_db_bs_rs") {
            cfg.sir_db_bs_rs = detail::parse_double_list(value, key);
        } else if (key == "sir_db_bs_u1") {
            cfg.sir_db_bs_u1 = detail::parse_double_list(value, key);
        } else if (key == "sir_db_rs_u1") {
            cfg.sir_db_rs_u1 = detail::parse_double_list(value, key);
        } else if (key == "mode") {
            if (value == "interference-limited") {
                cfg.mode = NoiseMode::interference_limited;
            } else if (value == "finite-snr") {
                cfg.mode = NoiseMode::finite_snr;
            } else {
                throw config_error("invalid value for key 'mode': " + value +
                                   " (expected interference-limited or finite-snr)");
            }
        } else if (key == "snr_db") {
            cfg.snr_db = detail::parse_double(value, key);
        } else if (key == "mc.trials") {
            cfg.mc_trials = detail::parse_u64(value, key);
        } else if (key == "mc.seed") {
            cfg.mc_seed = detail::parse_u64(value, key);
            cfg.seed_defaulted = false;
        } else if (key == "mc.workers") {
            cfg.workers = static_cast<unsigned>(detail::parse_u64(value, key));
        } else {
            throw config_error("unknown key '" + key + "' in " + origin);
        }
    }
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse_config(in, path);
}

} // namespace oncsim
