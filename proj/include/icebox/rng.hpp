#pragma once

#include <cmath>
#include <cstdint>

namespace icebox {

// Deterministic, platform-independent RNG. std::mt19937_64 would be portable,
// but the std distributions are not; we need bit-identical streams everywhere,
// so both the generator and the draw helpers are pinned here.
//
// splitmix64: Steele/Lea/Flood mixer. Output i of a stream seeded with s is
// mix(s + (i+1)*GAMMA), which also gives an O(1) formula for derived seeds.
// xoshiro256++: Blackman/Vigna; state seeded from a splitmix64 stream.

inline constexpr std::uint64_t kSplitmixGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// i-th output (0-based) of the splitmix64 stream with seed `seed`.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
    return splitmix64_mix(seed + (i + 1) * kSplitmixGamma);
}

// Derived seed for replica/worker `i`; children of distinct i are independent
// draws of the parent stream.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t i) {
    return splitmix64_at(master, i);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        for (int i = 0; i < 4; ++i) s_[i] = splitmix64_at(seed, static_cast<std::uint64_t>(i));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit mantissa.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in {0,...,n-1} via masked rejection; unbiased and portable.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
        mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next() & mask;
            if (v < n) return v;
        }
    }

    bool coin() { return (next() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace icebox
