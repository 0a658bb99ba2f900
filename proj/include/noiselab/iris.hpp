#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noiselab/image.hpp"
#include "noiselab/noise.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

/// Binary iris template: two bits per block (horizontal and vertical Haar
/// detail signs) plus a validity mask. A mask bit is 0 where the detail is
/// exactly zero, since a tie carries no sign.
struct IrisCode {
    std::vector<std::uint8_t> bits;  // 0/1, length 2 * rows * cols
    std::vector<std::uint8_t> mask;  // 0/1, same length
    int rows = 0;
    int cols = 0;
};

/// Tiles the image into a rows x cols grid of equal blocks (remainder pixels
/// at the right/bottom are dropped) and emits, per block in row-major order:
///   bit 0: sign of sum(left half) - sum(right half)
///   bit 1: sign of sum(top half) - sum(bottom half)
/// Halves are floor(side/2) wide; the middle row/column of odd blocks is
/// ignored. Sign >= 0 encodes 1.
inline IrisCode encode(const GrayImage& img, int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid must be at least 1x1");
    if (rows > img.height() || cols > img.width())
        throw std::invalid_argument("grid larger than image");
    const int bh = img.height() / rows;
    const int bw = img.width() / cols;

    IrisCode code;
    code.rows = rows;
    code.cols = cols;
    code.bits.reserve(static_cast<std::size_t>(2) * rows * cols);
    code.mask.reserve(code.bits.capacity());

    auto block_sum = [&](int x0, int y0, int x1, int y1) {
        std::int64_t s = 0;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) s += img(x, y);
        return s;
    };
    auto push = [&](std::int64_t detail) {
        code.bits.push_back(detail >= 0 ? 1 : 0);
        code.mask.push_back(detail != 0 ? 1 : 0);
    };

    for (int br = 0; br < rows; ++br)
        for (int bc = 0; bc < cols; ++bc) {
            const int x0 = bc * bw, y0 = br * bh;
            const int hw = bw / 2, hh = bh / 2;
            std::int64_t horizontal = block_sum(x0, y0, x0 + hw, y0 + bh) -
                                      block_sum(x0 + bw - hw, y0, x0 + bw, y0 + bh);
            std::int64_t vertical = block_sum(x0, y0, x0 + bw, y0 + hh) -
                                    block_sum(x0, y0 + bh - hh, x0 + bw, y0 + bh);
            push(horizontal);
            push(vertical);
        }
    return code;
}

/// Fractional hamming distance over jointly valid bits:
/// |{i : bits differ, both masks set}| / |{i : both masks set}|.
inline double hamming_distance(const IrisCode& a, const IrisCode& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.bits.size() != b.bits.size())
        throw std::invalid_argument("iris codes differ in grid or length");
    std::size_t valid = 0, differ = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        if (a.mask[i] && b.mask[i]) {
            ++valid;
            if (a.bits[i] != b.bits[i]) ++differ;
        }
    }
    if (valid == 0) throw std::invalid_argument("no jointly valid bits to compare");
    return static_cast<double>(differ) / static_cast<double>(valid);
}

// Noise families whose strength is set by a single scalar, for sweeps.
enum class SweepNoiseKind { salt_pepper, gaussian, uniform, speckle };

/// Maps a scalar level onto a noise spec: impulse density, gaussian variance
/// (zero mean), uniform half-width [-level, level], or speckle variance.
inline NoiseSpec sweep_noise_spec(SweepNoiseKind kind, double level) {
    switch (kind) {
        case SweepNoiseKind::salt_pepper: return ImpulseNoise{level, 0.5};
        case SweepNoiseKind::gaussian: return GaussianNoise{0.0, level};
        case SweepNoiseKind::uniform: return UniformNoise{-level, level};
        case SweepNoiseKind::speckle: return SpeckleNoise{level};
    }
    throw std::invalid_argument("unknown sweep noise kind");
}

struct SweepRow {
    double level = 0.0;
    double mean_hd = 0.0;
    double min_hd = 0.0;
    double max_hd = 0.0;
};

/// For each level, corrupts the image once per seed, re-encodes, and reports
/// mean/min/max hamming distance to the clean code. Rows come back in level
/// order; levels must be given ascending.
inline std::vector<SweepRow> noise_hd_sweep(const GrayImage& img, SweepNoiseKind kind,
                                            std::span<const double> levels,
                                            std::span<const Seed> seeds, int grid_rows,
                                            int grid_cols) {
    if (levels.empty() || seeds.empty())
        throw std::invalid_argument("sweep needs at least one level and one seed");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] > levels[i - 1]))
            throw std::invalid_argument("sweep levels must be strictly increasing");

    const IrisCode clean = encode(img, grid_rows, grid_cols);
    std::vector<SweepRow> rows;
    rows.reserve(levels.size());
    for (double level : levels) {
        const NoiseSpec spec = sweep_noise_spec(kind, level);
        SweepRow row;
        row.level = level;
        row.min_hd = 2.0;  // larger than any valid distance
        for (Seed seed : seeds) {
            double hd = hamming_distance(clean, encode(apply_noise(img, spec, seed),
                                                       grid_rows, grid_cols));
            row.mean_hd += hd;
            row.min_hd = std::min(row.min_hd, hd);
            row.max_hd = std::max(row.max_hd, hd);
        }
        row.mean_hd /= static_cast<double>(seeds.size());
        rows.push_back(row);
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "level,mean_hd,min_hd,max_hd\n";
    for (const auto& r : rows) {
        out += format_double(r.level) + ',' + format_double(r.mean_hd) + ',' +
               format_double(r.min_hd) + ',' + format_double(r.max_hd) + '\n';
    }
    return out;
}

}  // namespace noiselab
