#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uamsim {

/// Deterministic random stream. Wraps mt19937_64 with hand-rolled variate
/// transforms so that identical seeds give identical draws on every platform
/// (std::*_distribution output is implementation-defined).
class RandomStream {
  public:
    RandomStream() : engine_(0) {}
    explicit RandomStream(uint64_t seed) : engine_(seed) {}

    /// Derive an independent named stream from a base seed. Streams with
    /// different tags or indices never share state.
    static RandomStream derive(uint64_t base_seed, uint64_t tag, uint64_t index = 0) {
        return RandomStream(mix(mix(mix(0x9e3779b97f4a7c15ULL ^ base_seed, tag), index), base_seed));
    }

    uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be > 0.
    int uniform_int(int n) {
        // Rejection keeps the draw unbiased for any n.
        const uint64_t span = static_cast<uint64_t>(n);
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<int>(x % span);
    }

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    /// Normal via Box-Muller, one variate per call (no cached spare, so the
    /// draw count is a pure function of the call count).
    double normal(double mean, double std_dev) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        return mean + std_dev * z;
    }

    /// splitmix64 finalizer; also used for per-cell seed derivation.
    static uint64_t mix(uint64_t z, uint64_t salt) {
        z += 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace uamsim
