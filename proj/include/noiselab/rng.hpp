#pragma once

#include <cmath>
#include <cstdint>

namespace noiselab {

// Seed for every random operation. Same seed + same parameters + same image
// gives a bit-identical result, across runs and across bindings that
// reimplement the same stream.
struct Seed {
    std::uint64_t value = 0;
};

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
// whole algorithm fits in a dozen lines and can be reproduced exactly in any
// language, which keeps noise fields portable.
class SplitMix64 {
public:
    explicit SplitMix64(Seed seed) noexcept : state_(seed.value) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution from the top bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Standard normal draws via Box-Muller on the SplitMix64 stream. Each pair of
// uniforms yields two deviates; the second is cached, so the mapping from
// stream position to output is fixed by construction.
class NormalSampler {
public:
    explicit NormalSampler(Seed seed) noexcept : rng_(seed) {}

    double next() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = rng_.next_double();
        double u2 = rng_.next_double();
        // 1 - u1 lies in (0, 1], keeping the log argument positive.
        double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace noiselab
