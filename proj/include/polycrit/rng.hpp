#pragma once

#include <cstdint>
#include <limits>

namespace polycrit {

// One step of the splitmix64 mixing function (Steele, Lea, Flood 2014).
// Used both as the seeding expander and as the stream-derivation hash, so
// every derived stream is a pure function of 64-bit integers and reproduces
// bit-identically on any platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** 1.0 (Blackman, Vigna 2018), seeded through splitmix64.
// Fixed, documented algorithm: integer state transitions only, so identical
// seeds give identical streams on every platform and every run.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0) { this->seed(seed); }

    void seed(std::uint64_t value) {
        std::uint64_t sm = value;
        for (auto& word : state_) word = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
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

    // Uniform double in [0, 1) from the top 53 bits. Avoids
    // std::uniform_real_distribution, whose output is implementation-defined.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

// Stream for trial `trial` at problem size `n`, derived from the experiment
// seed. Trials can then run in any order (or in parallel) and still draw
// identical samples.
inline std::uint64_t derive_trial_seed(std::uint64_t seed, int n, int trial) {
    std::uint64_t s = seed ^ (static_cast<std::uint64_t>(n) * 1000000000ULL +
                              static_cast<std::uint64_t>(trial));
    return splitmix64(s);
}

}  // namespace polycrit
