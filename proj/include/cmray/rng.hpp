#pragma once

// Deterministic splitmix64 generator: certificate sweeps must reproduce
// bit-identical sample streams for a given seed on every platform, which
// rules out the unspecified std:: distributions.

#include <cstdint>

namespace cmray {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi] inclusive
    long long range(long long lo, long long hi) {
        return lo + (long long)(next() % (std::uint64_t)(hi - lo + 1));
    }
};

} // namespace cmray
