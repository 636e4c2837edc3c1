#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace defprobe {

// Campaigns must replay bit-identically for a given seed regardless of
// thread count or standard library. Engine state is mt19937_64 (fully
// specified output sequence); value mapping is done here instead of
// std::*_distribution, whose results are implementation-defined.
using Rng = std::mt19937_64;

// SplitMix64 finalizer, the mixing step behind substream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the (a, b) substream of `master`. Workers in a parallel campaign
// each seed their own Rng from this, so scheduling cannot reorder draws:
// substream(seed, repeat, set) for sampling, substream(seed, cell, run) for
// GP campaigns, substream(seed, trial) for oracle trials.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Unbiased integer in [0, bound), bound >= 1.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform_real01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_real01(rng) < p; }

// Standard normal via Box-Muller; one variate per call.
inline double gaussian(Rng& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform_real01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

}  // namespace defprobe
