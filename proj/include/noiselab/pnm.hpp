#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noiselab/image.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

using PnmImage = std::variant<GrayImage, RgbImage>;

namespace detail {

inline bool pnm_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Header scanner: whitespace separates tokens, '#' starts a comment that runs
// to end of line.
class PnmScanner {
public:
    explicit PnmScanner(std::string_view data) : data_(data) {}

    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (pnm_space(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    int next_int(const char* what) {
        skip_space_and_comments();
        if (pos_ >= data_.size() || data_[pos_] < '0' || data_[pos_] > '9')
            throw parse_error(std::string("expected ") + what + " in PNM header");
        long v = 0;
        while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 0x7fffffffL) throw parse_error(std::string(what) + " out of range");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    // Raster data in P5/P6 starts after a single whitespace byte.
    std::size_t binary_start() {
        if (pos_ >= data_.size() || !pnm_space(data_[pos_]))
            throw parse_error("expected single whitespace before PNM raster data");
        return pos_ + 1;
    }

    std::size_t pos() const noexcept { return pos_; }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses PGM/PPM bytes: P2/P5 grayscale, P3/P6 color. Header comments are
/// skipped; maxval must be exactly 255 (the library is strictly 8-bit, so
/// other depths are rejected rather than rescaled).
inline PnmImage load_pnm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw parse_error("not a PNM file (missing P2/P3/P5/P6 magic)");
    char kind = bytes[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw parse_error(std::string("unsupported PNM magic 'P") + kind + "'");
    const bool color = (kind == '3' || kind == '6');
    const bool binary = (kind == '5' || kind == '6');

    detail::PnmScanner sc(bytes.substr(2));
    int width = sc.next_int("width");
    int height = sc.next_int("height");
    int maxval = sc.next_int("maxval");
    if (width < 1 || height < 1) throw parse_error("PNM dimensions must be positive");
    if (maxval != 255)
        throw parse_error("unsupported maxval " + std::to_string(maxval) +
                          " (only 8-bit images with maxval 255 are accepted)");

    const std::size_t channels = color ? 3 : 1;
    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    std::vector<std::uint8_t> px(count);

    if (binary) {
        std::size_t start = 2 + sc.binary_start();
        if (bytes.size() - start < count) throw parse_error("truncated PNM raster data");
        for (std::size_t i = 0; i < count; ++i)
            px[i] = static_cast<std::uint8_t>(bytes[start + i]);
    } else {
        detail::PnmScanner body(bytes.substr(2 + sc.pos()));
        for (std::size_t i = 0; i < count; ++i) {
            int v = body.next_int("pixel value");
            if (v > maxval) throw parse_error("pixel value exceeds maxval");
            px[i] = static_cast<std::uint8_t>(v);
        }
    }

    if (color) return RgbImage(width, height, std::move(px));
    return GrayImage(width, height, std::move(px));
}

/// Canonical binary PGM: "P5\n<width> <height>\n255\n" + raw rows. One fixed
/// form so golden files and round-trip tests can compare bytes.
inline std::string save_pgm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width()) + ' ' +
                      std::to_string(img.height()) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels().data()), img.size());
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw parse_error("error reading " + path.string());
    return data;
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw parse_error("error writing " + path.string());
}

/// Loads a PNM file and converts color inputs to grayscale.
inline GrayImage load_gray(const std::filesystem::path& path) {
    PnmImage img = load_pnm(read_file(path));
    if (auto* g = std::get_if<GrayImage>(&img)) return std::move(*g);
    return rgb_to_gray(std::get<RgbImage>(img));
}

}  // namespace noiselab
