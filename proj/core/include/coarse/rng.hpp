#pragma once

#include <cmath>
#include <cstdint>

namespace coarse {

// SplitMix64: the state advances by the golden-ratio increment and each
// output is the finalizer mix of the new state,
//
//     state += 0x9E3779B97F4A7C15
//     z  = state
//     z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//     z ^= z >> 27;  z *= 0x94D049BB133111EB
//     z ^= z >> 31
//
// Pure 64-bit integer arithmetic, so identically seeded streams reproduce
// bit-for-bit across platforms. Every randomized routine in this library
// draws from this generator and nothing else.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from {0, ..., bound-1}: reject the top sliver of the
    // 64-bit range that does not split evenly into `bound` buckets.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ULL - ~0ULL % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x < limit) return x % bound;
        }
    }

    // Uniform in [0, 1), 53 random mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe inside log().
    double next_open_double() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Exactly two draws per variate, so the
    // stream position stays a deterministic function of the call count.
    double next_gaussian() {
        const double u1 = next_open_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

private:
    std::uint64_t state_;
};

// The documented mixer: the output transformation of SplitMix64 applied to a
// raw word. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for the `stream`-th derived substream: mix64(base XOR stream). Distinct
// streams of one base always get distinct seeds (XOR then a bijection), so a
// single run seed fans out into independent reproducible generators (one per
// family member, one per sampled map, ...). Nest for per-attempt streams:
// derive_seed(derive_seed(base, i), attempt).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ stream);
}

} // namespace coarse
