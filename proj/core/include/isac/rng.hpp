#pragma once

#include <cmath>
#include <cstdint>

namespace isac {

/// Deterministic 64-bit generator (splitmix64) with explicit seeding and
/// counter-based substream derivation, so Monte-Carlo runs are reproducible
/// bit-for-bit regardless of worker count or platform RNG library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1]: 53-bit mantissa, never returns 0.
    double uniform01() {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch only, fully pinned).
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, 8): top three output bits.
    int uniform8() { return static_cast<int>(next_u64() >> 61); }

  private:
    std::uint64_t state_;
};

/// Seed for substream `index` of a master seed: the index-th output of the
/// splitmix64 stream started at the master seed. Distinct indices give
/// decorrelated streams; the derivation is pure, so any subset of substreams
/// can be (re)created in any order on any thread.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    Rng r(master_seed + 0x9e3779b97f4a7c15ULL * index);
    return r.next_u64();
}

}  // namespace isac
