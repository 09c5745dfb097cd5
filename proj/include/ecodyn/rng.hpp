#pragma once

// Counter-based seeded RNG (splitmix64). Every sample index gets its own
// stream derived from (seed, index), so results do not depend on thread
// count or scheduling, and no std::uniform_* distribution (whose output is
// implementation-defined) is involved.

#include <cstdint>

#include "ecodyn/state.hpp"

namespace ecodyn {

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Independent stream for one sample index.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
        mix.next();
        return mix;
    }
};

/// Uniform point in the closed ball, by rejection from the bounding cube.
/// radius 0 returns the center.
inline State3 sample_ball(SplitMix64& rng, const State3& center, double radius) {
    if (radius <= 0.0) return center;
    for (;;) {
        const double u = rng.uniform(-1.0, 1.0);
        const double v = rng.uniform(-1.0, 1.0);
        const double w = rng.uniform(-1.0, 1.0);
        if (u * u + v * v + w * w <= 1.0)
            return {center.x1 + radius * u, center.x2 + radius * v, center.x3 + radius * w};
    }
}

}  // namespace ecodyn
