#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "oncsim/errors.hpp"
#include "oncsim/fading.hpp"

// Per-slot mutual information with cochannel interference, relay decoding
// state, and the conditional end-to-end mutual information each user sees
// from its three parallel decoding branches.

namespace oncsim {

enum class NoiseMode {
    finite_snr,           // SINR = g_d * snr / (sum(g_i) * snr + 1)
    interference_limited, // SINR = g_d / sum(g_i); noise ignored
};

// Half-duplex relaying spends three slots on two messages.
inline constexpr double kOncPrefactor = 2.0 / 3.0;

struct RateParams {
    double rate{0.5};                // target data rate, bit/s/Hz
    double prefactor{kOncPrefactor}; // time-sharing factor in front of log2
    double snr{1.0};                 // linear transmit SNR, used in finite_snr mode
    NoiseMode mode{NoiseMode::interference_limited};

    void validate() const {
        if (!(rate >= 0.0)) throw parameter_error("RateParams: rate must be nonnegative");
        if (!(prefactor > 0.0) || prefactor > 1.0) {
            throw parameter_error("RateParams: prefactor must be in (0, 1]");
        }
        if (mode == NoiseMode::finite_snr && !(snr > 0.0)) {
            throw parameter_error("RateParams: snr must be positive in finite-snr mode");
        }
    }

    RateParams with_prefactor(double p) const {
        RateParams out = *this;
        out.prefactor = p;
        return out;
    }
};

// Which source messages the relay decoded in slots n and n+1.
enum class RelayState {
    decoded_both = 1,
    decoded_first = 2,
    decoded_second = 3,
    decoded_none = 4,
};

inline int state_index(RelayState s) { return static_cast<int>(s); }

// Mutual information of one slot in bit/s/Hz. With no interferers in the
// interference-limited mode the SINR is unbounded and the result is +inf.
inline double mutual_information(const SlotRealization& slot, const RateParams& params) {
    if (slot.desired <= 0.0) return 0.0;
    double sinr;
    if (params.mode == NoiseMode::interference_limited) {
        sinr = slot.desired / slot.interference_sum();
    } else {
        sinr = slot.desired * params.snr / (slot.interference_sum() * params.snr + 1.0);
    }
    if (std::isinf(sinr)) return std::numeric_limits<double>::infinity();
    return params.prefactor * std::log2(1.0 + sinr);
}

// A slot decodes only when its mutual information strictly exceeds the
// rate; equality counts as failure (zero-probability event under
// continuous fading, pinned for deterministic tests).
inline bool slot_decodes(double mi, double rate) { return mi > rate; }

inline RelayState classify_relay_state(double mi_slot_n, double mi_slot_n1, double rate) {
    const bool first = slot_decodes(mi_slot_n, rate);
    const bool second = slot_decodes(mi_slot_n1, rate);
    if (first && second) return RelayState::decoded_both;
    if (first) return RelayState::decoded_first;
    if (second) return RelayState::decoded_second;
    return RelayState::decoded_none;
}

// End-to-end mutual information at user 1 for message b1, given the relay
// state. Branches: direct slot n; combine slot n+1 with the XOR relay
// slot; plain relay slot.
inline double user1_conditional_mi(RelayState state, double mi_direct_n, double mi_direct_n1,
                                   double mi_relay_n2) {
    switch (state) {
    case RelayState::decoded_both:
        return std::max(mi_direct_n, std::min(mi_direct_n1, mi_relay_n2));
    case RelayState::decoded_first:
        return std::max(mi_direct_n, mi_relay_n2);
    case RelayState::decoded_second:
    case RelayState::decoded_none:
        return mi_direct_n;
    }
    return mi_direct_n;
}

// Symmetric rule for user 2 decoding b2: the direct slot is n+1, the
// overheard slot is n, and the relay helps when it decoded b2.
inline double user2_conditional_mi(RelayState state, double mi_direct_n1, double mi_overheard_n,
                                   double mi_relay_n2) {
    switch (state) {
    case RelayState::decoded_both:
        return std::max(mi_direct_n1, std::min(mi_overheard_n, mi_relay_n2));
    case RelayState::decoded_second:
        return std::max(mi_direct_n1, mi_relay_n2);
    case RelayState::decoded_first:
    case RelayState::decoded_none:
        return mi_direct_n1;
    }
    return mi_direct_n1;
}

inline RelayState relay_state_of(const TrialDraw& trial, const RateParams& params) {
    return classify_relay_state(mutual_information(trial.relay[0], params),
                                mutual_information(trial.relay[1], params), params.rate);
}

// Outage indicator for user 1 under the network-coded relay scheme.
inline bool trial_outage_onc(const TrialDraw& trial, const RateParams& params) {
    const RelayState state = relay_state_of(trial, params);
    const double mi = user1_conditional_mi(state, mutual_information(trial.user1[0], params),
                                           mutual_information(trial.user1[1], params),
                                           mutual_information(trial.user1[2], params));
    return !slot_decodes(mi, params.rate);
}

inline bool trial_outage_onc_user2(const TrialDraw& trial, const RateParams& params) {
    const RelayState state = relay_state_of(trial, params);
    const double mi = user2_conditional_mi(state, mutual_information(trial.user2[1], params),
                                           mutual_information(trial.user2[0], params),
                                           mutual_information(trial.user2[2], params));
    return !slot_decodes(mi, params.rate);
}

// Non-cooperative baseline: one slot per message, full rate.
inline bool trial_outage_noncoop(const SlotRealization& slot, const RateParams& params) {
    const double mi = mutual_information(slot, params.with_prefactor(1.0));
    return !slot_decodes(mi, params.rate);
}

} // namespace oncsim
