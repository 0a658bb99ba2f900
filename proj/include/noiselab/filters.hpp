#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noiselab/image.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

// Rule for window pixels outside the image: clamp coordinates to the edge, or
// treat them as intensity 0.
enum class Border { replicate, zero };

enum class FilterKind { mean, median, gaussian, wiener };

struct FilterSpec {
    FilterKind kind = FilterKind::median;
    int window = 3;                          // odd, >= 1
    double sigma = 0.5;                      // gaussian only
    std::optional<double> noise_variance{};  // wiener only; estimated when absent
    Border border = Border::replicate;
};

namespace detail {

inline void require_odd_window(int w) {
    if (w < 1 || w % 2 == 0)
        throw std::invalid_argument("filter window must be an odd positive integer");
}

inline int clamp_index(int i, int n) noexcept { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// Pixel fetch honoring the border policy; zero-pad reads 0 outside the image.
inline int sample(const GrayImage& img, int x, int y, Border border) noexcept {
    if (border == Border::replicate)
        return img(clamp_index(x, img.width()), clamp_index(y, img.height()));
    if (x < 0 || x >= img.width() || y < 0 || y >= img.height()) return 0;
    return img(x, y);
}

// Per-pixel sum of the w x w window, computed with separable sliding sums.
// Border handling factors per axis: clamping (or zeroing) rows commutes with
// the horizontal pass, so two 1D passes equal the 2D window sum exactly.
inline std::vector<std::int64_t> window_sums(const GrayImage& img, int w, Border border,
                                             bool squared) {
    require_odd_window(w);
    const int W = img.width(), H = img.height(), r = w / 2;
    auto value = [&](int x, int y) -> std::int64_t {
        std::int64_t v = sample(img, x, y, border);
        return squared ? v * v : v;
    };

    std::vector<std::int64_t> horiz(static_cast<std::size_t>(W) * H);
    for (int y = 0; y < H; ++y) {
        std::int64_t s = 0;
        for (int j = -r; j <= r; ++j) s += value(j, y);
        horiz[static_cast<std::size_t>(y) * W] = s;
        for (int x = 1; x < W; ++x) {
            s += value(x + r, y) - value(x - 1 - r, y);
            horiz[static_cast<std::size_t>(y) * W + x] = s;
        }
    }

    auto horiz_row = [&](int y) -> const std::int64_t* {
        if (border == Border::replicate) return &horiz[static_cast<std::size_t>(clamp_index(y, H)) * W];
        if (y < 0 || y >= H) return nullptr;  // zero row
        return &horiz[static_cast<std::size_t>(y) * W];
    };

    std::vector<std::int64_t> out(static_cast<std::size_t>(W) * H);
    std::vector<std::int64_t> acc(W, 0);
    for (int j = -r; j <= r; ++j)
        if (const auto* row = horiz_row(j))
            for (int x = 0; x < W; ++x) acc[x] += row[x];
    for (int y = 0;; ++y) {
        std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::size_t>(y) * W);
        if (y + 1 == H) break;
        if (const auto* row = horiz_row(y + 1 + r))
            for (int x = 0; x < W; ++x) acc[x] += row[x];
        if (const auto* row = horiz_row(y - r))
            for (int x = 0; x < W; ++x) acc[x] -= row[x];
    }
    return out;
}

}  // namespace detail

/// Median filter via a sliding 256-bin histogram (Huang's method): the window
/// histogram is updated column-by-column instead of re-sorting per pixel.
inline GrayImage median_filter(const GrayImage& img, int w, Border border = Border::replicate) {
    detail::require_odd_window(w);
    const int W = img.width(), H = img.height(), r = w / 2;
    const int target = (w * w) / 2 + 1;  // w*w is odd, median is the middle rank
    GrayImage out(W, H);

    std::array<int, 256> hist{};
    auto add_column = [&](int x, int y, int delta) {
        for (int dy = -r; dy <= r; ++dy)
            hist[detail::sample(img, x, y + dy, border)] += delta;
    };
    auto median_of_hist = [&]() -> std::uint8_t {
        int cum = 0;
        for (int v = 0;; ++v) {
            cum += hist[v];
            if (cum >= target) return static_cast<std::uint8_t>(v);
        }
    };

    for (int y = 0; y < H; ++y) {
        hist.fill(0);
        for (int j = -r; j <= r; ++j) add_column(j, y, +1);
        out(0, y) = median_of_hist();
        for (int x = 1; x < W; ++x) {
            add_column(x - 1 - r, y, -1);
            add_column(x + r, y, +1);
            out(x, y) = median_of_hist();
        }
    }
    return out;
}

/// Arithmetic mean over the w x w window, rounded half away from zero.
inline GrayImage mean_filter(const GrayImage& img, int w, Border border = Border::replicate) {
    auto sums = detail::window_sums(img, w, border, false);
    const std::int64_t n = static_cast<std::int64_t>(w) * w;
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < sums.size(); ++i)
        // round(s/n) for non-negative s and odd n; s/n can never be an exact half
        out.pixels()[i] = static_cast<std::uint8_t>((sums[i] + n / 2) / n);
    return out;
}

/// Normalized 1D Gaussian profile exp(-x^2 / (2 sigma^2)), x in [-(n-1)/2, (n-1)/2].
inline std::vector<double> gaussian_kernel_1d(double sigma, int n) {
    detail::require_odd_window(n);
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
    const int r = n / 2;
    std::vector<double> k(n);
    double sum = 0.0;
    for (int x = -r; x <= r; ++x) {
        k[x + r] = std::exp(-(static_cast<double>(x) * x) / (2.0 * sigma * sigma));
        sum += k[x + r];
    }
    for (double& v : k) v /= sum;
    return k;
}

/// Square convolution kernel with non-negative weights summing to 1.
struct Kernel {
    int size = 1;
    std::vector<double> weights;  // size*size, row-major

    double at(int x, int y) const noexcept {
        return weights[static_cast<std::size_t>(y) * size + x];
    }
};

/// 2D Gaussian kernel: weight(x,y) proportional to exp(-(x^2+y^2)/(2 sigma^2)).
/// Built as the outer product of the normalized 1D profile with itself, which
/// is the same surface since the exponential factors per axis.
inline Kernel gaussian_kernel(double sigma, int n) {
    auto k1 = gaussian_kernel_1d(sigma, n);
    Kernel k;
    k.size = n;
    k.weights.resize(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            k.weights[static_cast<std::size_t>(y) * n + x] = k1[y] * k1[x];
    return k;
}

/// Separable Gaussian smoothing before quantization: two 1D passes over
/// doubles. Exposed so the float-space result can be compared against direct
/// 2D convolution.
inline std::vector<double> gaussian_filter_real(const GrayImage& img, double sigma, int n,
                                                Border border = Border::replicate) {
    auto k1 = gaussian_kernel_1d(sigma, n);
    const int W = img.width(), H = img.height(), r = n / 2;

    std::vector<double> horiz(static_cast<std::size_t>(W) * H);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double s = 0.0;
            for (int dx = -r; dx <= r; ++dx)
                s += k1[dx + r] * detail::sample(img, x + dx, y, border);
            horiz[static_cast<std::size_t>(y) * W + x] = s;
        }

    std::vector<double> out(static_cast<std::size_t>(W) * H);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double s = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                int yy = y + dy;
                if (border == Border::replicate) {
                    s += k1[dy + r] * horiz[static_cast<std::size_t>(detail::clamp_index(yy, H)) * W + x];
                } else if (yy >= 0 && yy < H) {
                    s += k1[dy + r] * horiz[static_cast<std::size_t>(yy) * W + x];
                }
            }
            out[static_cast<std::size_t>(y) * W + x] = s;
        }
    return out;
}

inline GrayImage gaussian_filter(const GrayImage& img, double sigma, int n,
                                 Border border = Border::replicate) {
    auto real = gaussian_filter_real(img, sigma, n, border);
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < real.size(); ++i) out.pixels()[i] = clamp_u8(real[i]);
    return out;
}

/// Noise-adaptive Wiener filter. Per pixel, with m and v the mean and
/// population variance of the w x w window:
///   signal_var = max(0, v - noise_var)
///   out = m + signal_var / (signal_var + noise_var) * (g - m)
/// with 0/0 treated as gain 0 (flat window under zero noise stays at m).
/// When noise_var is absent it is estimated as the mean of v over all pixels.
inline GrayImage wiener_filter(const GrayImage& img, int w,
                               std::optional<double> noise_variance = std::nullopt,
                               Border border = Border::replicate) {
    if (noise_variance && !(*noise_variance >= 0.0))
        throw std::invalid_argument("wiener noise variance must be >= 0");
    auto s1 = detail::window_sums(img, w, border, false);
    auto s2 = detail::window_sums(img, w, border, true);
    const double n = static_cast<double>(w) * w;
    const std::size_t count = s1.size();

    std::vector<double> mean(count), var(count);
    for (std::size_t i = 0; i < count; ++i) {
        double m = static_cast<double>(s1[i]) / n;
        double v = static_cast<double>(s2[i]) / n - m * m;
        mean[i] = m;
        var[i] = v > 0.0 ? v : 0.0;
    }

    double nv;
    if (noise_variance) {
        nv = *noise_variance;
    } else {
        double sum = 0.0;
        for (double v : var) sum += v;
        nv = sum / static_cast<double>(count);
    }

    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < count; ++i) {
        double signal = var[i] - nv;
        if (signal < 0.0) signal = 0.0;
        double denom = signal + nv;
        double gain = denom > 0.0 ? signal / denom : 0.0;
        double g = img.pixels()[i];
        out.pixels()[i] = clamp_u8(mean[i] + gain * (g - mean[i]));
    }
    return out;
}

inline GrayImage apply_filter(const GrayImage& img, const FilterSpec& spec) {
    switch (spec.kind) {
        case FilterKind::mean: return mean_filter(img, spec.window, spec.border);
        case FilterKind::median: return median_filter(img, spec.window, spec.border);
        case FilterKind::gaussian:
            return gaussian_filter(img, spec.sigma, spec.window, spec.border);
        case FilterKind::wiener:
            return wiener_filter(img, spec.window, spec.noise_variance, spec.border);
    }
    throw std::invalid_argument("unknown filter kind");
}

inline std::string filter_kind_name(FilterKind kind) {
    switch (kind) {
        case FilterKind::mean: return "mean";
        case FilterKind::median: return "median";
        case FilterKind::gaussian: return "gaussian";
        case FilterKind::wiener: return "wiener";
    }
    return "?";
}

}  // namespace noiselab
