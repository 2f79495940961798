#pragma once

#include <cstdint>

namespace sl3trace {

// Deterministic splittable generator (splitmix64). Sampling is a pure
// function of the seed: independent consumers derive disjoint streams with
// derive_seed, so parallel callers can partition the seed space. Certificates
// embed the sampled matrices, so verification does not depend on this
// particular generator.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform draw from [0, n) by rejection; n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Signed draw from [-n, n] \ {0}.
    long long next_signed_nonzero(std::uint64_t n) {
        const long long magnitude = 1 + static_cast<long long>(next_below(n));
        return next_below(2) == 0 ? magnitude : -magnitude;
    }

private:
    std::uint64_t state_;
};

// Child seed for a labeled substream; counter-based, so the n-th substream
// is independent of how many others were consumed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    return SplitMix64::mix(seed + SplitMix64::kGamma * (2 * label + 1));
}

} // namespace sl3trace
