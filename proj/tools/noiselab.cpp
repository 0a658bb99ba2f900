// noiselab command line tool: synthesize image noise, denoise, score image
// quality, probe iris-code hamming distance, and run batch benchmarks.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or format error,
// 3 numeric/domain error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noiselab/noiselab.hpp"

namespace fs = std::filesystem;
using namespace noiselab;

namespace {

struct NoiseCliOptions {
    std::string kind;
    std::optional<double> density;
    double salt_ratio = 0.5;
    double mean = 0.0;
    std::optional<double> variance;
    std::optional<double> low;
    std::optional<double> high;
    std::optional<int> shape;
    std::optional<double> scale;
    bool normalized = false;
};

void add_noise_flags(CLI::App& cmd, NoiseCliOptions& opt) {
    cmd.add_option("--noise", opt.kind, "Noise kind")
        ->required()
        ->check(CLI::IsMember({"salt-pepper", "gaussian", "uniform", "speckle", "gamma-speckle"}));
    cmd.add_option("--density", opt.density, "Impulse density in [0,1] (salt-pepper)");
    cmd.add_option("--salt-ratio", opt.salt_ratio, "Salt share of impulses, default 0.5");
    cmd.add_option("--mean", opt.mean, "Gaussian mean in gray levels, default 0");
    cmd.add_option("--variance", opt.variance, "Variance (gaussian: gray levels^2; speckle: relative)");
    cmd.add_option("--low", opt.low, "Uniform noise lower bound, gray levels");
    cmd.add_option("--high", opt.high, "Uniform noise upper bound, gray levels");
    cmd.add_option("--shape", opt.shape, "Gamma shape (positive integer)");
    cmd.add_option("--scale", opt.scale, "Gamma scale (> 0)");
    cmd.add_flag("--normalized", opt.normalized,
                 "Interpret gaussian mean/variance and uniform bounds in the [0,1] image "
                 "convention (means x255, variances x255^2); impulse and speckle parameters "
                 "are dimensionless and unaffected");
}

// Usage errors (missing flags for the chosen kind) are reported through
// CLI11's error path so they exit with code 1.
NoiseSpec build_noise_spec(const NoiseCliOptions& opt) {
    auto need = [&](bool present, const char* flag) {
        if (!present)
            throw CLI::RequiredError(std::string(flag) + " (required for --noise " + opt.kind + ")");
    };
    if (opt.kind == "salt-pepper") {
        need(opt.density.has_value(), "--density");
        return ImpulseNoise{*opt.density, opt.salt_ratio};
    }
    if (opt.kind == "gaussian") {
        need(opt.variance.has_value(), "--variance");
        double scale = opt.normalized ? 255.0 : 1.0;
        return GaussianNoise{opt.mean * scale, *opt.variance * scale * scale};
    }
    if (opt.kind == "uniform") {
        need(opt.low.has_value(), "--low");
        need(opt.high.has_value(), "--high");
        double scale = opt.normalized ? 255.0 : 1.0;
        return UniformNoise{*opt.low * scale, *opt.high * scale};
    }
    if (opt.kind == "speckle") {
        need(opt.variance.has_value(), "--variance");
        return SpeckleNoise{*opt.variance};
    }
    need(opt.shape.has_value(), "--shape");
    need(opt.scale.has_value(), "--scale");
    return GammaSpeckleNoise{*opt.shape, *opt.scale};
}

Border parse_border(const std::string& name) {
    return name == "zero" ? Border::zero : Border::replicate;
}

std::pair<int, int> parse_grid(const std::string& text) {
    auto sep = text.find('x');
    if (sep == std::string::npos) sep = text.find('X');
    if (sep == std::string::npos)
        throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 16x16");
    try {
        int rows = std::stoi(text.substr(0, sep));
        int cols = std::stoi(text.substr(sep + 1));
        return {rows, cols};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 16x16");
    }
}

std::vector<double> parse_level_list(const std::string& text) {
    std::vector<double> levels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            levels.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--levels", "expected a comma-separated list of numbers");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return levels;
}

int run(int argc, char** argv) {
    CLI::App app{"noiselab: image noise synthesis, denoising filters, quality metrics"};
    app.require_subcommand(1);

    // --- add-noise ---
    auto* add = app.add_subcommand("add-noise", "Corrupt a PGM/PPM with a noise model");
    std::string in_path, out_path;
    std::uint64_t seed = 0;
    NoiseCliOptions noise_opt;
    add->add_option("--in", in_path, "Input image (P2/P3/P5/P6)")->required();
    add->add_option("--out", out_path, "Output PGM path")->required();
    add_noise_flags(*add, noise_opt);
    add->add_option("--seed", seed, "RNG seed, default 0");
    add->callback([&] {
        GrayImage img = load_gray(in_path);
        write_file(out_path, save_pgm(apply_noise(img, build_noise_spec(noise_opt), Seed{seed})));
    });

    // --- filter ---
    auto* fil = app.add_subcommand("filter", "Denoise a PGM/PPM with a spatial filter");
    std::string filter_kind;
    int window = 3;
    double sigma = 0.5;
    std::optional<double> noise_var;
    std::string border = "replicate";
    fil->add_option("--in", in_path, "Input image (P2/P3/P5/P6)")->required();
    fil->add_option("--out", out_path, "Output PGM path")->required();
    fil->add_option("--filter", filter_kind, "Filter kind")
        ->required()
        ->check(CLI::IsMember({"mean", "median", "gaussian", "wiener"}));
    fil->add_option("--window", window, "Odd window size, default 3");
    fil->add_option("--sigma", sigma, "Gaussian sigma, default 0.5");
    fil->add_option("--noise-var", noise_var, "Wiener noise variance; estimated when omitted");
    fil->add_option("--border", border, "Border policy")
        ->check(CLI::IsMember({"replicate", "zero"}));
    fil->callback([&] {
        FilterSpec spec;
        if (filter_kind == "mean") spec.kind = FilterKind::mean;
        else if (filter_kind == "median") spec.kind = FilterKind::median;
        else if (filter_kind == "gaussian") spec.kind = FilterKind::gaussian;
        else spec.kind = FilterKind::wiener;
        spec.window = window;
        spec.sigma = sigma;
        spec.noise_variance = noise_var;
        spec.border = parse_border(border);
        write_file(out_path, save_pgm(apply_filter(load_gray(in_path), spec)));
    });

    // --- metrics ---
    auto* met = app.add_subcommand("metrics", "Print one CSV row: ref,test,mse,psnr_db,ad,md[,si]");
    std::string ref_path, test_path;
    bool with_si = false;
    int si_window = 3;
    met->add_option("--ref", ref_path, "Reference image")->required();
    met->add_option("--test", test_path, "Test image")->required();
    met->add_flag("--si", with_si, "Append the speckle index of the test image");
    met->add_option("--si-window", si_window, "Speckle index window, default 3");
    met->callback([&] {
        GrayImage ref = load_gray(ref_path);
        GrayImage test = load_gray(test_path);
        QualityReport report =
            compare(ref, test, with_si ? std::optional<int>(si_window) : std::nullopt);
        std::cout << metrics_csv_row(ref_path, test_path, report) << '\n';
    });

    // --- hist ---
    auto* his = app.add_subcommand("hist", "Export the intensity histogram as CSV");
    std::string hist_out;
    his->add_option("--in", in_path, "Input image (P2/P3/P5/P6)")->required();
    his->add_option("--out", hist_out, "Output CSV path; stdout when omitted");
    his->callback([&] {
        std::string csv = histogram_csv(histogram(load_gray(in_path)));
        if (hist_out.empty())
            std::cout << csv;
        else
            write_file(hist_out, csv);
    });

    // --- iris-hd ---
    auto* iris = app.add_subcommand(
        "iris-hd", "Sweep noise levels and report hamming distance to the clean iris code");
    std::string grid_text = "16x16", levels_text, sweep_kind, sweep_out;
    int seed_count = 20;
    std::uint64_t seed_base = 0;
    iris->add_option("--in", in_path, "Input image (P2/P3/P5/P6)")->required();
    iris->add_option("--grid", grid_text, "Encoder grid ROWSxCOLS, default 16x16");
    iris->add_option("--noise", sweep_kind, "Noise kind (single-parameter families)")
        ->required()
        ->check(CLI::IsMember({"salt-pepper", "gaussian", "uniform", "speckle"}));
    iris->add_option("--levels", levels_text, "Ascending noise levels, e.g. 0,0.01,0.05")->required();
    iris->add_option("--seeds", seed_count, "Seeds per level, default 20")
        ->check(CLI::PositiveNumber);
    iris->add_option("--seed", seed_base, "First seed value, default 0");
    iris->add_option("--out", sweep_out, "Output CSV path; stdout when omitted");
    iris->callback([&] {
        auto [rows, cols] = parse_grid(grid_text);
        std::vector<double> levels = parse_level_list(levels_text);
        std::vector<Seed> seeds;
        seeds.reserve(static_cast<std::size_t>(seed_count));
        for (int i = 0; i < seed_count; ++i) seeds.push_back(Seed{seed_base + static_cast<std::uint64_t>(i)});
        SweepNoiseKind kind = SweepNoiseKind::salt_pepper;
        if (sweep_kind == "gaussian") kind = SweepNoiseKind::gaussian;
        else if (sweep_kind == "uniform") kind = SweepNoiseKind::uniform;
        else if (sweep_kind == "speckle") kind = SweepNoiseKind::speckle;
        std::string csv =
            sweep_csv(noise_hd_sweep(load_gray(in_path), kind, levels, seeds, rows, cols));
        if (sweep_out.empty())
            std::cout << csv;
        else
            write_file(sweep_out, csv);
    });

    // --- bench ---
    auto* ben = app.add_subcommand("bench", "Run the images x noises x filters benchmark grid");
    std::string config_path, csv_override, md_override;
    ben->add_option("--config", config_path, "INI-style benchmark config")->required();
    ben->add_option("--csv", csv_override, "CSV output path (overrides the config)");
    ben->add_option("--md", md_override, "Markdown output path (overrides the config)");
    ben->callback([&] {
        BenchConfig cfg = parse_config(read_file(config_path));
        BenchResult result = run_benchmark(cfg, fs::path(config_path).parent_path());

        std::string csv_path = csv_override.empty() ? cfg.output : csv_override;
        std::string md_path = md_override.empty() ? cfg.markdown : md_override;
        if (!result.rows.empty()) {
            std::string csv = emit_csv(result.rows);
            if (csv_path.empty())
                std::cout << csv;
            else
                write_file(csv_path, csv);
            if (!md_path.empty()) write_file(md_path, emit_markdown(result.rows));
        }
        if (!result.errors.empty()) {
            for (const auto& e : result.errors)
                std::cerr << "error: " << e.image << '/' << e.noise << '/' << e.filter << ": "
                          << e.message << '\n';
            throw std::domain_error(std::to_string(result.errors.size()) +
                                    " benchmark cell(s) failed");
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
