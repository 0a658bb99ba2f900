#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "noiselab/image.hpp"
#include "noiselab/rng.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

// Noise model descriptions. Parameters are in gray levels (0..255 domain)
// unless stated otherwise; callers quoting normalized-[0,1] conventions must
// scale before constructing a spec (the CLI's --normalized flag does this).

struct ImpulseNoise {
    double density = 0.0;     // fraction of pixels hit, in [0,1]
    double salt_ratio = 0.5;  // salt share of the hits, in [0,1]
};

struct GaussianNoise {
    double mean = 0.0;      // gray levels
    double variance = 0.0;  // gray levels squared
};

struct UniformNoise {
    double low = 0.0;   // gray levels, low <= high
    double high = 0.0;
};

// out = in + n*in with n zero-mean uniform of the given variance.
struct SpeckleNoise {
    double variance = 0.0;  // dimensionless (relative to signal)
};

// Multiplicative speckle driven by the Erlang generator: the per-pixel
// multiplier is a gamma draw normalized to unit mean, so its variance is
// 1/shape regardless of scale.
struct GammaSpeckleNoise {
    int shape = 1;       // integer >= 1
    double scale = 1.0;  // > 0
};

using NoiseSpec =
    std::variant<ImpulseNoise, GaussianNoise, UniformNoise, SpeckleNoise, GammaSpeckleNoise>;

/// Bipolar impulse (salt-and-pepper) noise. Per pixel, independently:
/// with probability density*salt_ratio the pixel becomes 255 (salt),
/// with probability density*(1-salt_ratio) it becomes 0 (pepper),
/// otherwise it is left untouched. One uniform draw per pixel, row-major.
inline GrayImage add_salt_pepper(const GrayImage& img, double density, double salt_ratio,
                                 Seed seed) {
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("salt-pepper density must be in [0,1]");
    if (!(salt_ratio >= 0.0 && salt_ratio <= 1.0))
        throw std::invalid_argument("salt ratio must be in [0,1]");
    GrayImage out = img;
    SplitMix64 rng(seed);
    const double p_salt = density * salt_ratio;
    for (auto& px : out.pixels()) {
        double u = rng.next_double();
        if (u < p_salt)
            px = 255;
        else if (u < density)
            px = 0;
    }
    return out;
}

/// Additive Gaussian noise: out = clamp(round(in + n)), n ~ N(mean, variance).
inline GrayImage add_gaussian(const GrayImage& img, double mean, double variance, Seed seed) {
    if (!(variance >= 0.0)) throw std::invalid_argument("gaussian variance must be >= 0");
    GrayImage out = img;
    NormalSampler normal(seed);
    const double sigma = std::sqrt(variance);
    for (auto& px : out.pixels())
        px = clamp_u8(px + mean + sigma * normal.next());
    return out;
}

/// Additive uniform noise: out = clamp(round(in + u)), u ~ U[low, high].
inline GrayImage add_uniform(const GrayImage& img, double low, double high, Seed seed) {
    if (!(low <= high)) throw std::invalid_argument("uniform noise requires low <= high");
    GrayImage out = img;
    SplitMix64 rng(seed);
    const double span = high - low;
    for (auto& px : out.pixels())
        px = clamp_u8(px + low + span * rng.next_double());
    return out;
}

/// Multiplicative speckle: out = clamp(round(in + n*in)) with n zero-mean
/// uniform of the given variance, i.e. n ~ U[-sqrt(3v), +sqrt(3v)].
inline GrayImage add_speckle(const GrayImage& img, double variance, Seed seed) {
    if (!(variance >= 0.0)) throw std::invalid_argument("speckle variance must be >= 0");
    GrayImage out = img;
    SplitMix64 rng(seed);
    const double half_width = std::sqrt(3.0 * variance);
    for (auto& px : out.pixels()) {
        double n = -half_width + 2.0 * half_width * rng.next_double();
        px = clamp_u8(px + n * px);
    }
    return out;
}

/// One Erlang(shape, scale) draw: the sum of `shape` independent
/// Exponential(scale) variables, density g^(shape-1) e^(-g/scale) /
/// ((shape-1)! scale^shape). Mean shape*scale, variance shape*scale^2.
inline double sample_gamma(int shape, double scale, SplitMix64& rng) {
    if (shape < 1) throw std::invalid_argument("gamma shape must be a positive integer");
    if (!(scale > 0.0)) throw std::invalid_argument("gamma scale must be > 0");
    double sum = 0.0;
    for (int i = 0; i < shape; ++i)
        sum += -scale * std::log(1.0 - rng.next_double());
    return sum;
}

inline double sample_gamma(int shape, double scale, Seed seed) {
    SplitMix64 rng(seed);
    return sample_gamma(shape, scale, rng);
}

/// Speckle via the gamma generator: per pixel, multiplier m = g / (shape*scale)
/// with g ~ Erlang(shape, scale), so m has unit mean and variance 1/shape.
/// out = clamp(round(in * m)). Larger shape means weaker speckle.
inline GrayImage add_gamma_speckle(const GrayImage& img, int shape, double scale, Seed seed) {
    if (shape < 1) throw std::invalid_argument("gamma shape must be a positive integer");
    if (!(scale > 0.0)) throw std::invalid_argument("gamma scale must be > 0");
    GrayImage out = img;
    SplitMix64 rng(seed);
    const double mean = shape * scale;
    for (auto& px : out.pixels())
        px = clamp_u8(px * (sample_gamma(shape, scale, rng) / mean));
    return out;
}

inline GrayImage apply_noise(const GrayImage& img, const NoiseSpec& spec, Seed seed) {
    return std::visit(
        [&](const auto& s) -> GrayImage {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ImpulseNoise>)
                return add_salt_pepper(img, s.density, s.salt_ratio, seed);
            else if constexpr (std::is_same_v<T, GaussianNoise>)
                return add_gaussian(img, s.mean, s.variance, seed);
            else if constexpr (std::is_same_v<T, UniformNoise>)
                return add_uniform(img, s.low, s.high, seed);
            else if constexpr (std::is_same_v<T, SpeckleNoise>)
                return add_speckle(img, s.variance, seed);
            else
                return add_gamma_speckle(img, s.shape, s.scale, seed);
        },
        spec);
}

inline std::string noise_kind_name(const NoiseSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ImpulseNoise>) return "salt-pepper";
            else if constexpr (std::is_same_v<T, GaussianNoise>) return "gaussian";
            else if constexpr (std::is_same_v<T, UniformNoise>) return "uniform";
            else if constexpr (std::is_same_v<T, SpeckleNoise>) return "speckle";
            else return "gamma-speckle";
        },
        spec);
}

}  // namespace noiselab
