#pragma once

// Brute-force filter implementations used as oracles. Every window is
// gathered pixel by pixel and reduced directly; no sliding sums, no
// histograms, no separability. Kept deliberately independent of the
// optimized paths in noiselab/filters.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "noiselab/filters.hpp"
#include "noiselab/image.hpp"

namespace noiselab::testing {

inline int fetch(const GrayImage& img, int x, int y, Border border) {
    if (border == Border::replicate) {
        x = std::clamp(x, 0, img.width() - 1);
        y = std::clamp(y, 0, img.height() - 1);
        return img(x, y);
    }
    if (x < 0 || x >= img.width() || y < 0 || y >= img.height()) return 0;
    return img(x, y);
}

inline std::vector<int> gather_window(const GrayImage& img, int cx, int cy, int w, Border border) {
    const int r = w / 2;
    std::vector<int> values;
    values.reserve(static_cast<std::size_t>(w) * w);
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) values.push_back(fetch(img, cx + dx, cy + dy, border));
    return values;
}

inline GrayImage reference_median(const GrayImage& img, int w, Border border) {
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            auto values = gather_window(img, x, y, w, border);
            std::sort(values.begin(), values.end());
            out(x, y) = static_cast<std::uint8_t>(values[values.size() / 2]);
        }
    return out;
}

inline GrayImage reference_mean(const GrayImage& img, int w, Border border) {
    const double n = static_cast<double>(w) * w;
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double sum = 0.0;
            for (int v : gather_window(img, x, y, w, border)) sum += v;
            out(x, y) = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, std::round(sum / n))));
        }
    return out;
}

// Direct 2D convolution, no separation.
inline GrayImage reference_gaussian(const GrayImage& img, double sigma, int n, Border border) {
    const Kernel k = gaussian_kernel(sigma, n);
    const int r = n / 2;
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    sum += k.at(dx + r, dy + r) * fetch(img, x + dx, y + dy, border);
            out(x, y) = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, std::round(sum))));
        }
    return out;
}

// Float-space direct 2D convolution, for comparing against the separable
// implementation before quantization.
inline std::vector<double> reference_gaussian_real(const GrayImage& img, double sigma, int n,
                                                   Border border) {
    const Kernel k = gaussian_kernel(sigma, n);
    const int r = n / 2;
    std::vector<double> out(img.size());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    sum += k.at(dx + r, dy + r) * fetch(img, x + dx, y + dy, border);
            out[static_cast<std::size_t>(y) * img.width() + x] = sum;
        }
    return out;
}

inline GrayImage reference_wiener(const GrayImage& img, int w, std::optional<double> noise_variance,
                                  Border border) {
    const double n = static_cast<double>(w) * w;
    const std::size_t count = img.size();
    std::vector<double> mean(count), var(count);
    std::size_t i = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x, ++i) {
            std::int64_t s1 = 0, s2 = 0;
            for (int v : gather_window(img, x, y, w, border)) {
                s1 += v;
                s2 += static_cast<std::int64_t>(v) * v;
            }
            double m = static_cast<double>(s1) / n;
            double v = static_cast<double>(s2) / n - m * m;
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
    for (i = 0; i < count; ++i) {
        double signal = var[i] - nv;
        if (signal < 0.0) signal = 0.0;
        double denom = signal + nv;
        double gain = denom > 0.0 ? signal / denom : 0.0;
        double g = img.pixels()[i];
        double value = std::round(mean[i] + gain * (g - mean[i]));
        out.pixels()[i] = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, value)));
    }
    return out;
}

inline GrayImage reference_filter(const GrayImage& img, const FilterSpec& spec) {
    switch (spec.kind) {
        case FilterKind::mean: return reference_mean(img, spec.window, spec.border);
        case FilterKind::median: return reference_median(img, spec.window, spec.border);
        case FilterKind::gaussian: return reference_gaussian(img, spec.sigma, spec.window, spec.border);
        case FilterKind::wiener:
            return reference_wiener(img, spec.window, spec.noise_variance, spec.border);
    }
    throw std::invalid_argument("unknown filter kind");
}

}  // namespace noiselab::testing
