#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "noiselab/util.hpp"

namespace noiselab {

/// 8-bit grayscale raster, row-major. The value type of the whole library:
/// noise generators, filters and metrics all consume and produce GrayImage.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        pixels_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        check_dims(width, height);
        if (pixels_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("pixel count does not equal width * height");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::uint8_t operator()(int x, int y) const noexcept {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& operator()(int x, int y) noexcept {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }
    std::vector<std::uint8_t>& pixels() noexcept { return pixels_; }

    bool same_size(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    static void check_dims(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// 8-bit RGB raster, row-major interleaved triples. Only used on the way in;
/// the first pipeline step converts to grayscale.
class RgbImage {
public:
    RgbImage(int width, int height, std::vector<std::uint8_t> interleaved)
        : width_(width), height_(height), pixels_(std::move(interleaved)) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("image dimensions must be >= 1");
        if (pixels_.size() != static_cast<std::size_t>(width) * height * 3)
            throw std::invalid_argument("pixel count does not equal width * height * 3");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// BT.601 luma: gray = round(0.299 R + 0.587 G + 0.114 B). The weights sum to
/// one, so gray triples map to themselves.
inline GrayImage rgb_to_gray(const RgbImage& img) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width()) * img.height());
    const auto& px = img.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        double y = 0.299 * px[3 * i] + 0.587 * px[3 * i + 1] + 0.114 * px[3 * i + 2];
        out[i] = clamp_u8(y);
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

/// 256-bin intensity histogram; bins sum to the pixel count.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};

    std::uint64_t total() const noexcept {
        std::uint64_t t = 0;
        for (auto b : bins) t += b;
        return t;
    }
};

inline Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels()) ++h.bins[v];
    return h;
}

/// CSV export: header "intensity,count" followed by 256 rows.
inline std::string histogram_csv(const Histogram& h) {
    std::string out = "intensity,count\n";
    for (int v = 0; v < 256; ++v) {
        out += std::to_string(v);
        out += ',';
        out += std::to_string(h.bins[v]);
        out += '\n';
    }
    return out;
}

}  // namespace noiselab
