#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "oncsim/analytic.hpp"
#include "oncsim/errors.hpp"

// Diversity-multiplexing tradeoff: closed-form curves for the three
// schemes plus a numerical estimator that reads the diversity gain off the
// closed-form outage engine at finite SIR.

namespace oncsim {

struct DmtPoint {
    double r{0.0}; // multiplexing gain
    double d{0.0}; // diversity gain
};

enum class DmtScheme {
    onc,          // network-coded relaying: d = 2 - 3r, r in [0, 2/3]
    noncoop,      // single link:            d = 1 - r,  r in [0, 1]
    conventional, // repetition relaying:    d = 2 - 4r, r in [0, 1/2]
};

inline double dmt_max_multiplexing(DmtScheme s) {
    switch (s) {
    case DmtScheme::onc: return 2.0 / 3.0;
    case DmtScheme::noncoop: return 1.0;
    case DmtScheme::conventional: return 0.5;
    }
    return 0.0;
}

inline double dmt_onc(double r) {
    if (!(r >= 0.0) || r > 2.0 / 3.0) {
        throw parameter_error("dmt_onc: multiplexing gain must lie in [0, 2/3]");
    }
    return 2.0 - 3.0 * r;
}

inline double dmt_noncoop(double r) {
    if (!(r >= 0.0) || r > 1.0) {
        throw parameter_error("dmt_noncoop: multiplexing gain must lie in [0, 1]");
    }
    return 1.0 - r;
}

inline double dmt_conventional(double r) {
    if (!(r >= 0.0) || r > 0.5) {
        throw parameter_error("dmt_conventional: multiplexing gain must lie in [0, 1/2]");
    }
    return 2.0 * (1.0 - 2.0 * r);
}

inline double dmt_closed_form(DmtScheme s, double r) {
    switch (s) {
    case DmtScheme::onc: return dmt_onc(r);
    case DmtScheme::noncoop: return dmt_noncoop(r);
    case DmtScheme::conventional: return dmt_conventional(r);
    }
    return 0.0;
}

inline std::vector<DmtPoint> dmt_curve(DmtScheme scheme, std::size_t n_points) {
    if (n_points < 2) throw parameter_error("dmt_curve: need at least two points");
    const double r_max = dmt_max_multiplexing(scheme);
    std::vector<DmtPoint> out;
    out.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        out.push_back({r, dmt_closed_form(scheme, r)});
    }
    return out;
}

// Rate used in the multiplexing-gain limit R(sir)/log2(sir) -> r. At r = 0
// the limit admits any bounded rate; a fixed base rate realizes it (a rate
// proportional to an arbitrarily small r would collapse to zero outage at
// every finite SIR).
inline constexpr double kDiversityProbeBaseRate = 0.5;

inline double diversity_probe_rate(double r, double sir) {
    return r > 0.0 ? r * std::log2(sir) : kDiversityProbeBaseRate;
}

// Finite-SIR diversity estimate for the network-coded scheme: every link
// SIR is set to the same grid value, the rate scales as r*log2(sir), and
// the estimate is the negated least-squares slope of log outage against
// log SIR.
inline double estimate_diversity(double r, std::span<const double> sir_grid,
                                 std::size_t k_interferers) {
    if (!(r >= 0.0) || r >= 2.0 / 3.0) {
        throw parameter_error("estimate_diversity: multiplexing gain must lie in [0, 2/3)");
    }
    if (sir_grid.size() < 2) {
        throw parameter_error("estimate_diversity: need at least two grid points");
    }
    if (k_interferers == 0) {
        throw parameter_error("estimate_diversity: need at least one interferer");
    }
    for (std::size_t i = 0; i < sir_grid.size(); ++i) {
        if (!(sir_grid[i] > 1.0)) {
            throw parameter_error("estimate_diversity: grid SIRs must exceed one");
        }
        if (i > 0 && !(sir_grid[i] > sir_grid[i - 1])) {
            throw parameter_error("estimate_diversity: grid must be strictly ascending");
        }
    }

    std::vector<double> log_sir, log_out;
    log_sir.reserve(sir_grid.size());
    log_out.reserve(sir_grid.size());
    for (double sir : sir_grid) {
        const std::vector<double> sirs(k_interferers, sir);
        const double p = outage_onc(diversity_probe_rate(r, sir), sirs, sirs, sirs).total;
        if (!(p > 0.0)) {
            throw parameter_error("estimate_diversity: outage underflowed to zero; "
                                  "shrink the SIR grid");
        }
        log_sir.push_back(std::log(sir));
        log_out.push_back(std::log(p));
    }

    const std::size_t n = log_sir.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += log_sir[i];
        my += log_out[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (log_sir[i] - mx) * (log_out[i] - my);
        den += (log_sir[i] - mx) * (log_sir[i] - mx);
    }
    return -num / den;
}

} // namespace oncsim
