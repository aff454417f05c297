#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "oncsim/analytic.hpp"
#include "oncsim/capacity.hpp"
#include "oncsim/errors.hpp"
#include "oncsim/fading.hpp"

// Monte Carlo outage estimation. Trials are independent and keyed by their
// index, never by the executing thread, so estimates are bit-identical for
// any worker count. Reductions are integer sums.

namespace oncsim {

enum class Scheme { onc, noncoop };

inline const char* scheme_name(Scheme s) { return s == Scheme::onc ? "onc" : "noncoop"; }

struct McConfig {
    std::uint64_t trials{1'000'000};
    std::uint64_t master_seed{20260809};
    Scheme scheme{Scheme::onc};
    unsigned workers{0}; // 0 = one chunk per hardware thread

    void validate() const {
        if (trials == 0) throw parameter_error("McConfig: need at least one trial");
    }
};

struct OutageEstimate {
    double p_hat{0.0};
    std::uint64_t trials{0};
    double stderr_{0.0};
    double ci_low{0.0};
    double ci_high{0.0};
};

inline OutageEstimate make_estimate(std::uint64_t hits, std::uint64_t trials) {
    OutageEstimate e;
    e.trials = trials;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    e.ci_low = std::max(0.0, e.p_hat - 1.96 * e.stderr_);
    e.ci_high = std::min(1.0, e.p_hat + 1.96 * e.stderr_);
    return e;
}

namespace detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Splits [0, trials) into contiguous chunks and accumulates per-chunk
// counter arrays; the final sum is order-independent.
template <std::size_t N, typename TallyFn>
std::array<std::uint64_t, N> parallel_tally(std::uint64_t trials, unsigned workers,
                                            TallyFn&& tally) {
    const unsigned w =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), trials));
    std::vector<std::array<std::uint64_t, N>> partial(w);
    auto run_chunk = [&](unsigned chunk) {
        const std::uint64_t begin = trials * chunk / w;
        const std::uint64_t end = trials * (chunk + 1) / w;
        std::array<std::uint64_t, N> local{};
        for (std::uint64_t t = begin; t < end; ++t) {
            const std::size_t bin = tally(t);
            if (bin < N) ++local[bin];
        }
        partial[chunk] = local;
    };
    if (w <= 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (unsigned c = 0; c < w; ++c) threads.emplace_back(run_chunk, c);
        for (auto& th : threads) th.join();
    }
    std::array<std::uint64_t, N> total{};
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < N; ++i) total[i] += p[i];
    }
    return total;
}

} // namespace detail

inline OutageEstimate estimate_outage(const McConfig& config, const TrialProfiles& profiles,
                                      const RateParams& params) {
    config.validate();
    params.validate();
    profiles.validate();
    std::array<std::uint64_t, 1> hits{};
    if (config.scheme == Scheme::onc) {
        hits = detail::parallel_tally<1>(config.trials, config.workers, [&](std::uint64_t t) {
            thread_local TrialDraw draw;
            draw_trial_into(profiles, config.master_seed, t, draw);
            return trial_outage_onc(draw, params) ? 0u : 1u;
        });
    } else {
        hits = detail::parallel_tally<1>(config.trials, config.workers, [&](std::uint64_t t) {
            thread_local SlotRealization slot;
            draw_direct_slot_into(profiles, config.master_seed, t, slot);
            return trial_outage_noncoop(slot, params) ? 0u : 1u;
        });
    }
    return make_estimate(hits[0], config.trials);
}

// Empirical distribution of the four relay decoding states.
inline std::array<double, 4> estimate_state_frequencies(const McConfig& config,
                                                        const TrialProfiles& profiles,
                                                        const RateParams& params) {
    config.validate();
    params.validate();
    profiles.validate();
    const auto counts =
        detail::parallel_tally<4>(config.trials, config.workers, [&](std::uint64_t t) {
            thread_local TrialDraw draw;
            draw_trial_into(profiles, config.master_seed, t, draw);
            return static_cast<std::size_t>(state_index(relay_state_of(draw, params)) - 1);
        });
    std::array<double, 4> freq{};
    for (int i = 0; i < 4; ++i) {
        freq[i] = static_cast<double>(counts[i]) / static_cast<double>(config.trials);
    }
    return freq;
}

struct SweepCell {
    double sir_db{0.0};
    double rate{0.5};
};

struct SweepRow {
    double sir_db{0.0};
    double rate{0.5};
    Scheme scheme{Scheme::onc};
    double p_analytic{0.0};
    OutageEstimate mc;
};

// One row per grid cell per scheme, cells in input order. Every cell uses
// the equal-SIR scenario at its grid value; the analytic column comes from
// the closed forms, the Monte Carlo column from seeded trials.
inline std::vector<SweepRow> sweep(std::span<const SweepCell> grid, const McConfig& base,
                                   std::size_t k_interferers, const RateParams& params_base) {
    if (grid.empty()) throw parameter_error("sweep: grid must not be empty");
    if (k_interferers == 0) throw parameter_error("sweep: need at least one interferer");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * 2);
    for (const SweepCell& cell : grid) {
        const double sir = std::pow(10.0, cell.sir_db / 10.0);
        const std::vector<double> sirs(k_interferers, sir);
        const TrialProfiles profiles = symmetric_profiles(sir, k_interferers);
        RateParams params = params_base;
        params.rate = cell.rate;

        for (Scheme scheme : {Scheme::onc, Scheme::noncoop}) {
            McConfig mc = base;
            mc.scheme = scheme;
            SweepRow row;
            row.sir_db = cell.sir_db;
            row.rate = cell.rate;
            row.scheme = scheme;
            row.p_analytic = scheme == Scheme::onc ? outage_onc(cell.rate, sirs, sirs, sirs).total
                                                   : outage_noncoop(cell.rate, sirs);
            row.mc = estimate_outage(mc, profiles, params);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace oncsim
