#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "noiselab/filters.hpp"
#include "noiselab/image.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

namespace detail {
inline void require_same_size(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("images differ in size");
}
}  // namespace detail

/// Mean squared error, gray-levels squared.
inline double mse(const GrayImage& a, const GrayImage& b) {
    detail::require_same_size(a, b);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a.pixels()[i]) - b.pixels()[i];
        sum += d * d;
    }
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

/// 10 log10(255^2 / mse), in dB; +infinity when mse is 0.
inline double psnr_from_mse(double mse_value) {
    if (!(mse_value >= 0.0)) throw std::invalid_argument("mse must be >= 0");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

inline double psnr(const GrayImage& a, const GrayImage& b) {
    return psnr_from_mse(mse(a, b));
}

/// Signed mean difference (a - b); antisymmetric in its arguments.
inline double avg_diff(const GrayImage& a, const GrayImage& b) {
    detail::require_same_size(a, b);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += static_cast<std::int64_t>(a.pixels()[i]) - b.pixels()[i];
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

/// Largest absolute pixel difference, an integer in [0, 255].
inline int max_diff(const GrayImage& a, const GrayImage& b) {
    detail::require_same_size(a, b);
    int md = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int d = std::abs(static_cast<int>(a.pixels()[i]) - b.pixels()[i]);
        if (d > md) md = d;
    }
    return md;
}

/// Mean of local (population) standard deviation over local mean, taken over
/// w x w windows with replicated borders. Windows whose mean is 0 carry no
/// contrast information and are skipped; the average runs over the rest.
inline double speckle_index(const GrayImage& img, int w) {
    detail::require_odd_window(w);
    const int W = img.width(), H = img.height(), r = w / 2;
    const double n = static_cast<double>(w) * w;
    double sum = 0.0;
    std::size_t counted = 0;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            std::int64_t s1 = 0, s2 = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    std::int64_t v = detail::sample(img, x + dx, y + dy, Border::replicate);
                    s1 += v;
                    s2 += v * v;
                }
            if (s1 == 0) continue;
            double m = static_cast<double>(s1) / n;
            double var = static_cast<double>(s2) / n - m * m;
            if (var < 0.0) var = 0.0;
            sum += std::sqrt(var) / m;
            ++counted;
        }
    if (counted == 0)
        throw std::invalid_argument("speckle index undefined: every window has zero mean");
    return sum / static_cast<double>(counted);
}

/// Full-reference quality bundle for one (reference, test) pair. The optional
/// speckle index is computed on the test image alone.
struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0;  // dB; +infinity for identical images
    double ad = 0.0;    // signed gray levels
    int md = 0;
    std::optional<double> si{};
};

inline QualityReport compare(const GrayImage& reference, const GrayImage& test,
                             std::optional<int> si_window = std::nullopt) {
    QualityReport r;
    r.mse = mse(reference, test);
    r.psnr = psnr_from_mse(r.mse);
    r.ad = avg_diff(reference, test);
    r.md = max_diff(reference, test);
    if (si_window) r.si = speckle_index(test, *si_window);
    return r;
}

/// One CSV row: ref,test,mse,psnr_db,ad,md[,si]. Infinite PSNR prints "inf".
inline std::string metrics_csv_row(const std::string& ref_name, const std::string& test_name,
                                   const QualityReport& r) {
    std::string row = ref_name + ',' + test_name + ',' + format_double(r.mse) + ',' +
                      format_double(r.psnr) + ',' + format_double(r.ad) + ',' +
                      std::to_string(r.md);
    if (r.si) row += ',' + format_double(*r.si);
    return row;
}

}  // namespace noiselab
