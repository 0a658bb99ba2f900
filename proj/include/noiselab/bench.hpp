#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "noiselab/bench_config.hpp"
#include "noiselab/metrics.hpp"
#include "noiselab/pnm.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

struct BenchRow {
    std::string image;
    std::string noise;
    std::string filter;
    std::optional<QualityReport> vs_original;
    std::optional<QualityReport> vs_noisy;
    double ms_noise = 0.0;
    double ms_filter = 0.0;
    double ms_metrics = 0.0;
};

struct BenchError {
    std::string image;
    std::string noise;
    std::string filter;
    std::string message;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<BenchError> errors;
};

namespace detail {

// Noise seeds depend only on the global seed and the (image, noise) labels,
// so editing the filter list never changes any noise field.
inline Seed cell_seed(std::uint64_t global, const std::string& image_label,
                      const std::string& noise_label) {
    std::uint64_t h = fnv1a64(image_label);
    h = fnv1a64(std::string_view("\x1f", 1), h);
    h = fnv1a64(noise_label, h);
    return Seed{global ^ h};
}

inline int bench_threads(std::size_t cells) {
    int threads = 1;  // sequential by default: parallel cells would skew per-stage times
    if (const char* env = std::getenv("NOISELAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) threads = static_cast<int>(v);
    }
    return static_cast<int>(std::min<std::size_t>(threads, cells));
}

}  // namespace detail

/// Runs the full images x noises x filters cross product: load, corrupt,
/// filter, score. Rows come back in cross-product order regardless of the
/// worker count (NOISELAB_THREADS; unset or 0 means sequential). Image I/O
/// failures throw; numeric failures inside a cell are collected per row.
inline BenchResult run_benchmark(const BenchConfig& cfg,
                                 const std::filesystem::path& base_dir = {}) {
    std::vector<GrayImage> images;
    images.reserve(cfg.images.size());
    for (const auto& entry : cfg.images) {
        std::filesystem::path p(entry.path);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        images.push_back(load_gray(p));
    }

    const std::size_t n_noise = cfg.noises.size();
    const std::size_t n_filter = cfg.filters.size();
    const std::size_t cells = cfg.images.size() * n_noise * n_filter;

    struct CellOutcome {
        BenchRow row;
        bool ok = false;
        std::string error;
    };
    std::vector<CellOutcome> outcomes(cells);

    auto run_cell = [&](std::size_t index) {
        const std::size_t fi = index % n_filter;
        const std::size_t ni = (index / n_filter) % n_noise;
        const std::size_t ii = index / (n_filter * n_noise);
        const auto& image = cfg.images[ii];
        const auto& noise = cfg.noises[ni];
        const auto& filter = cfg.filters[fi];

        CellOutcome& out = outcomes[index];
        out.row.image = image.label;
        out.row.noise = noise.label;
        out.row.filter = filter.label;
        try {
            using clock = std::chrono::steady_clock;
            auto ms_since = [](clock::time_point t0) {
                return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
            };

            auto t0 = clock::now();
            GrayImage noisy =
                apply_noise(images[ii], noise.spec, detail::cell_seed(cfg.seed, image.label, noise.label));
            double ms_noise = ms_since(t0);

            t0 = clock::now();
            GrayImage filtered = apply_filter(noisy, filter.spec);
            double ms_filter = ms_since(t0);

            t0 = clock::now();
            if (cfg.reference != ReferenceMode::noisy)
                out.row.vs_original = compare(images[ii], filtered);
            if (cfg.reference != ReferenceMode::original)
                out.row.vs_noisy = compare(noisy, filtered);
            double ms_metrics = ms_since(t0);

            if (cfg.timing) {
                out.row.ms_noise = ms_noise;
                out.row.ms_filter = ms_filter;
                out.row.ms_metrics = ms_metrics;
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = e.what();
        }
    };

    const int threads = detail::bench_threads(cells);
    if (threads <= 1) {
        for (std::size_t i = 0; i < cells; ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& th : pool) th.join();
    }

    BenchResult result;
    result.rows.reserve(cells);
    for (auto& out : outcomes) {
        if (out.ok)
            result.rows.push_back(std::move(out.row));
        else
            result.errors.push_back({out.row.image, out.row.noise, out.row.filter, out.error});
    }
    return result;
}

/// Flat CSV, one row per benchmark cell. Metric columns for the reference
/// convention that was not computed stay empty.
inline std::string emit_csv(const std::vector<BenchRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("no benchmark rows to emit");
    std::string out =
        "image,noise,filter,"
        "mse_vs_orig,psnr_vs_orig,ad_vs_orig,md_vs_orig,"
        "mse_vs_noisy,psnr_vs_noisy,ad_vs_noisy,md_vs_noisy,"
        "ms_noise,ms_filter,ms_metrics\n";
    auto report_cells = [](const std::optional<QualityReport>& r) -> std::string {
        if (!r) return ",,,";
        return format_double(r->mse) + ',' + format_double(r->psnr) + ',' + format_double(r->ad) +
               ',' + std::to_string(r->md);
    };
    for (const auto& row : rows) {
        out += row.image + ',' + row.noise + ',' + row.filter + ',';
        out += report_cells(row.vs_original) + ',';
        out += report_cells(row.vs_noisy) + ',';
        out += format_double(row.ms_noise) + ',' + format_double(row.ms_filter) + ',' +
               format_double(row.ms_metrics) + '\n';
    }
    return out;
}

/// Markdown report: per image, one filter x noise pivot table per metric
/// (MSE, PSNR, AD, MD). Pivots use the vs-original reports when present and
/// fall back to vs-noisy for runs scored against the noisy image only.
inline std::string emit_markdown(const std::vector<BenchRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("no benchmark rows to emit");

    std::vector<std::string> images, noises, filters;
    auto note = [](std::vector<std::string>& seen, const std::string& s) {
        for (const auto& v : seen)
            if (v == s) return;
        seen.push_back(s);
    };
    for (const auto& row : rows) {
        note(images, row.image);
        note(noises, row.noise);
        note(filters, row.filter);
    }

    auto find_row = [&](const std::string& img, const std::string& noi,
                        const std::string& fil) -> const BenchRow* {
        for (const auto& row : rows)
            if (row.image == img && row.noise == noi && row.filter == fil) return &row;
        return nullptr;
    };

    const bool vs_original = rows.front().vs_original.has_value();
    const char* reference_name = vs_original ? "vs original" : "vs noisy";

    std::string out = "# Benchmark report\n";
    for (const auto& img : images) {
        out += "\n## image: " + img + "\n";
        struct MetricCol {
            const char* title;
            std::string (*cell)(const QualityReport&);
        };
        const MetricCol metrics[] = {
            {"MSE", [](const QualityReport& r) { return format_double(r.mse); }},
            {"PSNR", [](const QualityReport& r) { return format_double(r.psnr); }},
            {"AD", [](const QualityReport& r) { return format_double(r.ad); }},
            {"MD", [](const QualityReport& r) { return std::to_string(r.md); }},
        };
        for (const auto& metric : metrics) {
            out += "\n### " + std::string(metric.title) + " (" + reference_name + ")\n\n";
            out += "| filter \\ noise |";
            for (const auto& n : noises) out += ' ' + n + " |";
            out += "\n|---|";
            for (std::size_t i = 0; i < noises.size(); ++i) out += "---|";
            out += '\n';
            for (const auto& f : filters) {
                out += "| " + f + " |";
                for (const auto& n : noises) {
                    const BenchRow* row = find_row(img, n, f);
                    const std::optional<QualityReport>* rep = nullptr;
                    if (row) rep = vs_original ? &row->vs_original : &row->vs_noisy;
                    out += ' ';
                    out += (rep && rep->has_value()) ? metric.cell(**rep) : std::string("-");
                    out += " |";
                }
                out += '\n';
            }
        }
    }
    return out;
}

}  // namespace noiselab
