#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cdeim {

/// Counter-based deterministic random generator.
///
/// Each (seed, stream) pair defines an independent substream; the k-th draw
/// is a pure function of (seed, stream, k), so parallel consumers that own
/// distinct streams produce identical results regardless of scheduling.
///
/// Scheme: the SplitMix64 finalizer applied to key + counter * GAMMA, with
/// key = finalizer(seed + GAMMA * (stream + 1)) and GAMMA = 0x9E3779B97F4A7C15.
/// Normal deviates use the Box-Muller transform (cosine branch, two uniform
/// draws per deviate, no caching).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed + GAMMA * (stream + 1))), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + GAMMA * ++counter_); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal deviate.
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, n). Modulo bias is irrelevant at our scales
    /// (n << 2^64) and keeps the draw count fixed.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static constexpr std::uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace cdeim
