#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace crpower {

// Deterministic random stream. The distribution transforms are spelled out
// here instead of using the std:: distribution classes, whose output is
// implementation-defined; a given seed has to reproduce the same run
// bit-for-bit on any platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1), 53-bit resolution from the top bits of mt19937_64.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Inverse-CDF transform, mean > 0. log1p keeps u -> 1 safe.
    double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

    // Box-Muller, one variate per call; the companion variate is discarded so
    // the stream state is just the engine state.
    double gaussian(double sigma) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));
        return sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer over (seed, stream id); decorrelates the per-purpose
// substreams (mobility, traffic, shadowing) derived from one scenario seed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace crpower
