#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "oncsim/errors.hpp"

// Counter-based random streams. Every stream is identified by a 64-bit key
// derived from structured components (master seed, trial index, receiver,
// slot, link), and the n-th draw of a stream is a pure function of
// (key, n). This makes every sample reproducible regardless of evaluation
// order or worker-thread count.

namespace oncsim {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

} // namespace detail

// Collapses a master seed plus structured components into a well-mixed
// 64-bit stream key.
inline constexpr std::uint64_t stream_key(std::uint64_t master_seed,
                                          std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = detail::mix64(master_seed + detail::kGolden);
    for (std::uint64_t p : parts) {
        h = detail::mix64(h + detail::kGolden + p);
    }
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() {
        counter_ += detail::kGolden;
        return detail::mix64(key_ + counter_);
    }

    // Uniform draw in the half-open interval (0, 1].
    double next_unit() {
        const std::uint64_t z = next_u64();
        return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

// One exponential draw with the given mean. Deterministic for a fixed
// stream state.
inline double sample_exponential(double mean, RandomStream& stream) {
    if (!(mean > 0.0)) {
        throw parameter_error("sample_exponential: mean must be positive");
    }
    return -mean * std::log(stream.next_unit());
}

} // namespace oncsim
