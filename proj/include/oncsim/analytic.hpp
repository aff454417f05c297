#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "oncsim/capacity.hpp"
#include "oncsim/errors.hpp"

// Closed-form outage probabilities in the interference-limited regime.
// Everything reduces to one primitive: the tail of the ratio X / sum(Y_k)
// of independent exponentials, expressed through the per-interferer SIRs
// lambda_k. The product form prod lambda_k / (lambda_k + t) is exact for
// any SIR vector, ties included; the textbook case-split forms are kept
// only as cross-check oracles.

namespace oncsim {

inline void validate_sirs(std::span<const double> sirs, const char* where) {
    if (sirs.empty()) {
        throw parameter_error(std::string(where) + ": need at least one interferer SIR");
    }
    for (double s : sirs) {
        if (!(s > 0.0)) throw parameter_error(std::string(where) + ": SIRs must be positive");
    }
}

// Decoding threshold on the instantaneous SIR: rate R at time-sharing
// prefactor f decodes when SIR > 2^(R/f) - 1.
inline double onc_threshold(double rate) { return std::exp2(1.5 * rate) - 1.0; }
inline double noncoop_threshold(double rate) { return std::exp2(rate) - 1.0; }

// Pr[X / sum(Y_k) > t] for X, Y_k independent exponentials with
// lambda_k = E[X] / E[Y_k].
inline double ratio_tail(double t, std::span<const double> sirs) {
    if (!(t >= 0.0)) throw parameter_error("ratio_tail: t must be nonnegative");
    validate_sirs(sirs, "ratio_tail");
    double p = 1.0;
    for (double lam : sirs) p *= lam / (lam + t);
    return p;
}

namespace detail {

// Left-associated integer power, so the equal-SIR reference reproduces the
// product loop bit for bit.
inline double int_pow(double x, std::size_t n) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= x;
    return p;
}

} // namespace detail

// Case-split evaluation of the same tail: a partial-fraction sum when all
// SIRs are pairwise distinct, the plain power otherwise. Exists as an
// independent route for testing ratio_tail; the partial-fraction branch is
// ill-conditioned for nearly equal SIRs and refuses them.
inline double ratio_tail_reference(double t, std::span<const double> sirs) {
    if (!(t >= 0.0)) throw parameter_error("ratio_tail_reference: t must be nonnegative");
    validate_sirs(sirs, "ratio_tail_reference");
    const std::size_t k = sirs.size();

    bool all_equal = true;
    for (std::size_t i = 1; i < k; ++i) {
        if (sirs[i] != sirs[0]) {
            all_equal = false;
            break;
        }
    }
    if (all_equal) return detail::int_pow(sirs[0] / (sirs[0] + t), k);

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double scale = std::max(sirs[i], sirs[j]);
            if (std::abs(sirs[i] - sirs[j]) < 1e-9 * scale) {
                throw parameter_error(
                    "ratio_tail_reference: nearly equal SIRs make the partial-fraction "
                    "form ill-conditioned; use ratio_tail");
            }
        }
    }

    // Partial fractions of prod_j 1/(1 + t/lambda_j):
    // coefficient of term k is prod_{j!=k} lambda_j / (lambda_j - lambda_k).
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double term = sirs[i] / (sirs[i] + t);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            term *= sirs[j] / (sirs[j] - sirs[i]);
        }
        sum += term;
    }
    return sum;
}

// Probabilities of the four relay decoding states. Both relay slots see
// the same SIR vector and fade independently.
inline std::array<double, 4> relay_state_probs(double rate, std::span<const double> sirs_relay) {
    if (!(rate >= 0.0)) throw parameter_error("relay_state_probs: rate must be nonnegative");
    const double q = ratio_tail(onc_threshold(rate), sirs_relay);
    return {q * q, q * (1.0 - q), q * (1.0 - q), (1.0 - q) * (1.0 - q)};
}

// Conditional outage of user 1 given the relay state. With
// a = Pr[direct slot n fails], b = Pr[direct slot n+1 decodes],
// c = Pr[relay slot decodes]:
//   decoded_both  : a - a*b*c   (XOR branch needs both helper slots)
//   decoded_first : a * (1 - c) (plain relay branch)
//   otherwise     : a           (direct branch only)
inline double outage_given_state(RelayState state, double rate, std::span<const double> sirs_bs_u1,
                                 std::span<const double> sirs_rs_u1) {
    if (!(rate >= 0.0)) throw parameter_error("outage_given_state: rate must be nonnegative");
    const double t = onc_threshold(rate);
    const double b = ratio_tail(t, sirs_bs_u1);
    const double a = 1.0 - b;
    const double c = ratio_tail(t, sirs_rs_u1);
    switch (state) {
    case RelayState::decoded_both:
        return a - a * b * c;
    case RelayState::decoded_first:
        return a * (1.0 - c);
    case RelayState::decoded_second:
    case RelayState::decoded_none:
        return a;
    }
    return a;
}

struct OutageBreakdown {
    std::array<double, 4> state_prob{};       // Pr[relay state = 1..4]
    std::array<double, 4> outage_given{};     // Pr[outage | state]
    double total{0.0};
};

inline OutageBreakdown outage_onc(double rate, std::span<const double> sirs_bs_rs,
                                  std::span<const double> sirs_bs_u1,
                                  std::span<const double> sirs_rs_u1) {
    validate_sirs(sirs_bs_rs, "outage_onc");
    if (sirs_bs_u1.size() != sirs_bs_rs.size() || sirs_rs_u1.size() != sirs_bs_rs.size()) {
        throw config_error("outage_onc: SIR vectors must share the same interferer count");
    }
    OutageBreakdown out;
    out.state_prob = relay_state_probs(rate, sirs_bs_rs);
    const RelayState states[4] = {RelayState::decoded_both, RelayState::decoded_first,
                                  RelayState::decoded_second, RelayState::decoded_none};
    for (int i = 0; i < 4; ++i) {
        out.outage_given[i] = outage_given_state(states[i], rate, sirs_bs_u1, sirs_rs_u1);
        out.total += out.state_prob[i] * out.outage_given[i];
    }
    return out;
}

inline double outage_noncoop(double rate, std::span<const double> sirs_bs_u1) {
    if (!(rate >= 0.0)) throw parameter_error("outage_noncoop: rate must be nonnegative");
    return 1.0 - ratio_tail(noncoop_threshold(rate), sirs_bs_u1);
}

} // namespace oncsim
