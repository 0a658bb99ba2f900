#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "noiselab/filters.hpp"
#include "noiselab/noise.hpp"
#include "noiselab/util.hpp"

namespace noiselab {

enum class ReferenceMode { original, noisy, both };

struct LabeledImage {
    std::string label;
    std::string path;
};

struct LabeledNoise {
    std::string label;
    NoiseSpec spec;
};

struct LabeledFilter {
    std::string label;
    FilterSpec spec;
};

struct BenchConfig {
    std::vector<LabeledImage> images;
    std::vector<LabeledNoise> noises;
    std::vector<LabeledFilter> filters;
    std::uint64_t seed = 0;
    ReferenceMode reference = ReferenceMode::both;
    std::string output;    // CSV path; empty means stdout
    std::string markdown;  // optional markdown report path
    // Wall-time columns emit 0 when timing is off, which keeps two runs of the
    // same config byte-identical. Off by default.
    bool timing = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct IniEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct IniSection {
    std::string name;
    int line = 0;
    std::vector<IniEntry> entries;
};

inline std::vector<IniSection> parse_ini(std::string_view text) {
    std::vector<IniSection> sections;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw parse_error(line_no, "unterminated section header");
            sections.push_back({std::string(trim(t.substr(1, t.size() - 2))), line_no, {}});
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw parse_error(line_no, "expected key = value");
        if (sections.empty())
            throw parse_error(line_no, "key outside of any section");
        std::string key(trim(t.substr(0, eq)));
        std::string value(trim(t.substr(eq + 1)));
        if (key.empty()) throw parse_error(line_no, "empty key");
        sections.back().entries.push_back({std::move(key), std::move(value), line_no});
    }
    return sections;
}

inline double config_double(const IniEntry& e) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw parse_error(e.line, "value of '" + e.key + "' is not a number: '" + e.value + "'");
    return v;
}

inline std::int64_t config_int(const IniEntry& e) {
    std::int64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw parse_error(e.line, "value of '" + e.key + "' is not an integer: '" + e.value + "'");
    return v;
}

inline std::uint64_t config_u64(const IniEntry& e) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw parse_error(e.line, "value of '" + e.key + "' is not an unsigned integer: '" + e.value + "'");
    return v;
}

// Lookup table over a section's entries with single-use and unknown-key
// checking; each noise/filter kind consumes exactly the keys it understands.
class SectionReader {
public:
    explicit SectionReader(const IniSection& sec) : sec_(sec), used_(sec.entries.size(), false) {}

    const IniEntry* find(std::string_view key) {
        const IniEntry* hit = nullptr;
        for (std::size_t i = 0; i < sec_.entries.size(); ++i) {
            if (sec_.entries[i].key == key) {
                if (hit)
                    throw parse_error(sec_.entries[i].line,
                                      "duplicate key '" + std::string(key) + "' in [" + sec_.name + "]");
                hit = &sec_.entries[i];
                used_[i] = true;
            }
        }
        return hit;
    }

    const IniEntry& require(std::string_view key) {
        const IniEntry* e = find(key);
        if (!e)
            throw parse_error(sec_.line, "[" + sec_.name + "] is missing required key '" +
                                             std::string(key) + "'");
        return *e;
    }

    void finish() const {
        for (std::size_t i = 0; i < sec_.entries.size(); ++i)
            if (!used_[i])
                throw parse_error(sec_.entries[i].line, "unknown key '" + sec_.entries[i].key +
                                                            "' in [" + sec_.name + "]");
    }

private:
    const IniSection& sec_;
    std::vector<bool> used_;
};

inline NoiseSpec parse_noise_section(const IniSection& sec) {
    SectionReader r(sec);
    const IniEntry& kind = r.require("kind");
    NoiseSpec spec;
    if (kind.value == "salt-pepper") {
        ImpulseNoise n;
        const IniEntry& density = r.require("density");
        n.density = config_double(density);
        if (!(n.density >= 0.0 && n.density <= 1.0))
            throw parse_error(density.line, "density must be in [0,1] (got " + density.value + ")");
        if (const IniEntry* e = r.find("salt_ratio")) {
            n.salt_ratio = config_double(*e);
            if (!(n.salt_ratio >= 0.0 && n.salt_ratio <= 1.0))
                throw parse_error(e->line, "salt_ratio must be in [0,1] (got " + e->value + ")");
        }
        spec = n;
    } else if (kind.value == "gaussian") {
        GaussianNoise n;
        const IniEntry& variance = r.require("variance");
        n.variance = config_double(variance);
        if (!(n.variance >= 0.0))
            throw parse_error(variance.line, "variance must be >= 0 (got " + variance.value + ")");
        if (const IniEntry* e = r.find("mean")) n.mean = config_double(*e);
        spec = n;
    } else if (kind.value == "uniform") {
        UniformNoise n;
        const IniEntry& low = r.require("low");
        const IniEntry& high = r.require("high");
        n.low = config_double(low);
        n.high = config_double(high);
        if (!(n.low <= n.high))
            throw parse_error(high.line, "uniform noise requires low <= high");
        spec = n;
    } else if (kind.value == "speckle") {
        SpeckleNoise n;
        const IniEntry& variance = r.require("variance");
        n.variance = config_double(variance);
        if (!(n.variance >= 0.0))
            throw parse_error(variance.line, "variance must be >= 0 (got " + variance.value + ")");
        spec = n;
    } else if (kind.value == "gamma-speckle") {
        GammaSpeckleNoise n;
        const IniEntry& shape = r.require("shape");
        const IniEntry& scale = r.require("scale");
        n.shape = static_cast<int>(config_int(shape));
        n.scale = config_double(scale);
        if (n.shape < 1)
            throw parse_error(shape.line, "shape must be a positive integer (got " + shape.value + ")");
        if (!(n.scale > 0.0))
            throw parse_error(scale.line, "scale must be > 0 (got " + scale.value + ")");
        spec = n;
    } else {
        throw parse_error(kind.line, "unknown noise kind '" + kind.value + "'");
    }
    r.finish();
    return spec;
}

inline FilterSpec parse_filter_section(const IniSection& sec) {
    SectionReader r(sec);
    const IniEntry& kind = r.require("kind");
    FilterSpec spec;
    if (kind.value == "mean") spec.kind = FilterKind::mean;
    else if (kind.value == "median") spec.kind = FilterKind::median;
    else if (kind.value == "gaussian") spec.kind = FilterKind::gaussian;
    else if (kind.value == "wiener") spec.kind = FilterKind::wiener;
    else throw parse_error(kind.line, "unknown filter kind '" + kind.value + "'");

    if (const IniEntry* e = r.find("window")) {
        spec.window = static_cast<int>(config_int(*e));
        if (spec.window < 1 || spec.window % 2 == 0)
            throw parse_error(e->line, "window must be an odd positive integer (got " + e->value + ")");
    }
    if (spec.kind == FilterKind::gaussian) {
        if (const IniEntry* e = r.find("sigma")) {
            spec.sigma = config_double(*e);
            if (!(spec.sigma > 0.0))
                throw parse_error(e->line, "sigma must be > 0 (got " + e->value + ")");
        }
    }
    if (spec.kind == FilterKind::wiener) {
        if (const IniEntry* e = r.find("noise_var")) {
            double v = config_double(*e);
            if (!(v >= 0.0))
                throw parse_error(e->line, "noise_var must be >= 0 (got " + e->value + ")");
            spec.noise_variance = v;
        }
    }
    if (const IniEntry* e = r.find("border")) {
        if (e->value == "replicate") spec.border = Border::replicate;
        else if (e->value == "zero") spec.border = Border::zero;
        else throw parse_error(e->line, "border must be 'replicate' or 'zero' (got " + e->value + ")");
    }
    r.finish();
    return spec;
}

}  // namespace detail

/// Parses the INI-style benchmark config:
///   [images]              one "label = path" per image
///   [noise.<label>]       kind = salt-pepper|gaussian|uniform|speckle|gamma-speckle + params
///   [filter.<label>]      kind = mean|median|gaussian|wiener + params
///   [run]                 seed, reference, output, markdown, timing (all optional)
/// Unknown sections/keys, malformed values and out-of-range parameters are
/// rejected with the offending line number.
inline BenchConfig parse_config(std::string_view text) {
    BenchConfig cfg;
    bool saw_images = false;

    for (const auto& sec : detail::parse_ini(text)) {
        if (sec.name == "images") {
            saw_images = true;
            for (const auto& e : sec.entries) {
                for (const auto& img : cfg.images)
                    if (img.label == e.key)
                        throw parse_error(e.line, "duplicate image label '" + e.key + "'");
                if (e.value.empty()) throw parse_error(e.line, "empty image path");
                cfg.images.push_back({e.key, e.value});
            }
        } else if (sec.name.starts_with("noise.")) {
            std::string label = sec.name.substr(6);
            if (label.empty()) throw parse_error(sec.line, "noise section needs a label");
            for (const auto& n : cfg.noises)
                if (n.label == label)
                    throw parse_error(sec.line, "duplicate noise label '" + label + "'");
            cfg.noises.push_back({std::move(label), detail::parse_noise_section(sec)});
        } else if (sec.name.starts_with("filter.")) {
            std::string label = sec.name.substr(7);
            if (label.empty()) throw parse_error(sec.line, "filter section needs a label");
            for (const auto& f : cfg.filters)
                if (f.label == label)
                    throw parse_error(sec.line, "duplicate filter label '" + label + "'");
            cfg.filters.push_back({std::move(label), detail::parse_filter_section(sec)});
        } else if (sec.name == "run") {
            detail::SectionReader r(sec);
            if (const auto* e = r.find("seed")) cfg.seed = detail::config_u64(*e);
            if (const auto* e = r.find("reference")) {
                if (e->value == "original") cfg.reference = ReferenceMode::original;
                else if (e->value == "noisy") cfg.reference = ReferenceMode::noisy;
                else if (e->value == "both") cfg.reference = ReferenceMode::both;
                else
                    throw parse_error(e->line, "reference must be 'original', 'noisy' or 'both' (got " +
                                                   e->value + ")");
            }
            if (const auto* e = r.find("output")) cfg.output = e->value;
            if (const auto* e = r.find("markdown")) cfg.markdown = e->value;
            if (const auto* e = r.find("timing")) {
                if (e->value == "on") cfg.timing = true;
                else if (e->value == "off") cfg.timing = false;
                else throw parse_error(e->line, "timing must be 'on' or 'off' (got " + e->value + ")");
            }
            r.finish();
        } else {
            throw parse_error(sec.line, "unknown section [" + sec.name + "]");
        }
    }

    if (!saw_images || cfg.images.empty())
        throw parse_error("config needs an [images] section with at least one image");
    if (cfg.noises.empty()) throw parse_error("config needs at least one [noise.<label>] section");
    if (cfg.filters.empty()) throw parse_error("config needs at least one [filter.<label>] section");
    return cfg;
}

}  // namespace noiselab
