#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "oncsim/errors.hpp"
#include "oncsim/random.hpp"

// Rayleigh block fading at power-gain level: each (receiver, slot, link)
// channel power gain is an independent exponential draw whose mean is the
// average power gain of that link. Slots fade independently; interferers
// transmit at the same power as the desired source, so average gains fully
// describe a scenario.

namespace oncsim {

// Average power gains of one desired link plus the K interferer links seen
// at the same receiver. The implied per-interferer SIR is
// desired_mean / interferer_means[k].
struct LinkGainProfile {
    double desired_mean{1.0};
    std::vector<double> interferer_means;

    std::size_t interferer_count() const { return interferer_means.size(); }

    void validate() const {
        if (!(desired_mean > 0.0)) {
            throw parameter_error("LinkGainProfile: desired_mean must be positive");
        }
        for (double m : interferer_means) {
            if (!(m > 0.0)) {
                throw parameter_error("LinkGainProfile: interferer means must be positive");
            }
        }
    }

    std::vector<double> sirs() const {
        std::vector<double> out;
        out.reserve(interferer_means.size());
        for (double m : interferer_means) out.push_back(desired_mean / m);
        return out;
    }
};

// Builds the profile for a link whose per-interferer SIRs are given
// directly: unit-mean desired gain, interferer mean 1/sir.
inline LinkGainProfile profile_from_sirs(const std::vector<double>& sirs) {
    LinkGainProfile p;
    p.interferer_means.reserve(sirs.size());
    for (double s : sirs) {
        if (!(s > 0.0)) throw parameter_error("profile_from_sirs: SIR values must be positive");
        p.interferer_means.push_back(1.0 / s);
    }
    return p;
}

// Sampled power gains of one receiver in one slot.
struct SlotRealization {
    double desired{0.0};
    std::vector<double> interferers;

    double interference_sum() const {
        double s = 0.0;
        for (double g : interferers) s += g;
        return s;
    }
};

// All channel realizations one three-slot round needs. relay holds the
// source-to-relay slots n and n+1; user slots are n, n+1 (source link) and
// n+2 (relay link).
struct TrialDraw {
    std::array<SlotRealization, 2> relay;
    std::array<SlotRealization, 3> user1;
    std::array<SlotRealization, 3> user2;
};

// Average-gain profiles for every link a trial draws from.
struct TrialProfiles {
    LinkGainProfile bs_rs; // source -> relay, interference at the relay
    LinkGainProfile bs_u1; // source -> user 1, interference at user 1
    LinkGainProfile rs_u1; // relay -> user 1, interference at user 1
    LinkGainProfile bs_u2;
    LinkGainProfile rs_u2;

    std::size_t interferer_count() const { return bs_rs.interferer_count(); }

    void validate() const {
        bs_rs.validate();
        bs_u1.validate();
        rs_u1.validate();
        bs_u2.validate();
        rs_u2.validate();
        const std::size_t k = bs_rs.interferer_count();
        if (bs_u1.interferer_count() != k || rs_u1.interferer_count() != k ||
            bs_u2.interferer_count() != k || rs_u2.interferer_count() != k) {
            throw config_error("TrialProfiles: all links must share the same interferer count");
        }
    }
};

// Equal-SIR scenario: every link sees the same per-interferer SIR.
inline TrialProfiles symmetric_profiles(double sir, std::size_t k_interferers) {
    const std::vector<double> sirs(k_interferers, sir);
    TrialProfiles p;
    p.bs_rs = profile_from_sirs(sirs);
    p.bs_u1 = profile_from_sirs(sirs);
    p.rs_u1 = profile_from_sirs(sirs);
    p.bs_u2 = profile_from_sirs(sirs);
    p.rs_u2 = profile_from_sirs(sirs);
    return p;
}

namespace detail {

enum class Receiver : std::uint64_t { relay = 0, user1 = 1, user2 = 2 };

// Link component ids inside a slot: 0 is the desired link, 1..K the
// interferers. Writes in place so hot Monte Carlo loops can reuse buffers.
inline void draw_slot_into(const LinkGainProfile& profile, std::uint64_t master_seed,
                           std::uint64_t trial, Receiver rx, std::uint64_t slot,
                           SlotRealization& out) {
    {
        RandomStream s(stream_key(master_seed, {trial, static_cast<std::uint64_t>(rx), slot, 0}));
        out.desired = sample_exponential(profile.desired_mean, s);
    }
    out.interferers.resize(profile.interferer_count());
    for (std::size_t k = 0; k < profile.interferer_count(); ++k) {
        RandomStream s(
            stream_key(master_seed, {trial, static_cast<std::uint64_t>(rx), slot, k + 1}));
        out.interferers[k] = sample_exponential(profile.interferer_means[k], s);
    }
}

} // namespace detail

// Draws a full trial. Every gain comes from its own counter-based stream
// keyed by (master seed, trial, receiver, slot, link), so a subset of the
// draw (for example the single slot the non-cooperative baseline needs)
// reproduces the identical values.
inline void draw_trial_into(const TrialProfiles& profiles, std::uint64_t master_seed,
                            std::uint64_t trial, TrialDraw& d) {
    using detail::Receiver;
    detail::draw_slot_into(profiles.bs_rs, master_seed, trial, Receiver::relay, 0, d.relay[0]);
    detail::draw_slot_into(profiles.bs_rs, master_seed, trial, Receiver::relay, 1, d.relay[1]);
    detail::draw_slot_into(profiles.bs_u1, master_seed, trial, Receiver::user1, 0, d.user1[0]);
    detail::draw_slot_into(profiles.bs_u1, master_seed, trial, Receiver::user1, 1, d.user1[1]);
    detail::draw_slot_into(profiles.rs_u1, master_seed, trial, Receiver::user1, 2, d.user1[2]);
    detail::draw_slot_into(profiles.bs_u2, master_seed, trial, Receiver::user2, 0, d.user2[0]);
    detail::draw_slot_into(profiles.bs_u2, master_seed, trial, Receiver::user2, 1, d.user2[1]);
    detail::draw_slot_into(profiles.rs_u2, master_seed, trial, Receiver::user2, 2, d.user2[2]);
}

inline TrialDraw draw_trial(const TrialProfiles& profiles, std::uint64_t master_seed,
                            std::uint64_t trial) {
    profiles.validate();
    TrialDraw d;
    draw_trial_into(profiles, master_seed, trial, d);
    return d;
}

// The slot the non-cooperative baseline uses: user 1, slot n. Identical
// values to the corresponding slot of draw_trial.
inline void draw_direct_slot_into(const TrialProfiles& profiles, std::uint64_t master_seed,
                                  std::uint64_t trial, SlotRealization& out) {
    detail::draw_slot_into(profiles.bs_u1, master_seed, trial, detail::Receiver::user1, 0, out);
}

inline SlotRealization draw_direct_slot(const TrialProfiles& profiles, std::uint64_t master_seed,
                                        std::uint64_t trial) {
    SlotRealization s;
    draw_direct_slot_into(profiles, master_seed, trial, s);
    return s;
}

} // namespace oncsim
