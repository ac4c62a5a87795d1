#pragma once

#include <cstdint>
#include <random>

namespace assort {

// splitmix64 step; used to decorrelate substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic substream seed for (seed, index); used so that samples,
// restarts and rewiring runs are independent of worker scheduling.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = seed ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(substream_seed(seed, index));
}

// Unbiased draw from [0, k); implementation-independent (no std distributions).
inline std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t k) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % k;
}

} // namespace assort
