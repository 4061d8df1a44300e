#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hyperfractal {

/// Deterministic random number generation.
///
/// All stochastic operations in this library draw from xoshiro256**
/// (Blackman & Vigna) seeded through SplitMix64. Both algorithms are fixed
/// here, independent of the standard library, so that identical seeds give
/// byte-identical outputs on every platform. Floating-point variates are
/// derived with fixed rules:
///   - uniform double in [0,1): top 53 bits of a 64-bit draw, scaled by 2^-53
///   - bounded integer in [0,n): Lemire multiply-shift on a 64-bit draw
///   - standard normal pair: Box-Muller on two uniform draws
///
/// Stream derivation: substreams are obtained by folding integer tags into
/// the seed with SplitMix64, one step per tag (see derive_stream). Sampling
/// loops derive one substream per point index, which makes results
/// independent of iteration order and thread count.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    /// xoshiro256** next
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n >= 1.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// One standard normal pair via Box-Muller.
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = 1.0 - next_double();  // (0,1], keeps log finite
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

/// Folds integer tags into a master seed, one SplitMix64 step per tag.
template <typename... Tags>
std::uint64_t derive_stream(std::uint64_t seed, Tags... tags) {
    std::uint64_t s = seed;
    ((s = splitmix64(s) ^ static_cast<std::uint64_t>(tags), s = splitmix64(s)), ...);
    return s;
}

// Fixed purpose tags for substream derivation.
inline constexpr std::uint64_t kStreamGridPoints = 0x67726964u;   // manhattan sampling
inline constexpr std::uint64_t kStreamCenters = 0x636e7472u;      // gaussian centers
inline constexpr std::uint64_t kStreamCityPoints = 0x63697479u;   // city sampling

}  // namespace hyperfractal
