#pragma once

#include <cstdint>
#include <string_view>

namespace context_eval {

// Deterministic RNG kit. Everything downstream of a run seed flows through
// these so outputs are bit-identical across runs and platforms (the std
// distributions are implementation-defined, so we avoid them).

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() { return splitmix64_next(state); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) via the multiply-high trick.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Key-derived stream: (seed, label, key) -> independent SplitMix64 state.
// Used for per-post Bernoulli draws so sharded execution matches sequential.
inline SplitMix64 stream_for(std::uint64_t seed, std::string_view label,
                             std::string_view key) {
    std::uint64_t h = seed;
    h ^= fnv1a64(label) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= fnv1a64(key) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return SplitMix64(h);
}

inline double uniform_for(std::uint64_t seed, std::string_view label,
                          std::string_view key) {
    return stream_for(seed, label, key).next_double();
}

}  // namespace context_eval
