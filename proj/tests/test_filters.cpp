#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "noiselab/filters.hpp"
#include "noiselab/noise.hpp"
#include "support/reference_filters.hpp"
#include "support/synthetic.hpp"

using namespace noiselab;
using noiselab::testing::random_image;

TEST_CASE("median filter") {
    SECTION("constant image is a fixed point") {
        GrayImage img(9, 7, 42);
        CHECK(median_filter(img, 3) == img);
        CHECK(median_filter(img, 5) == img);
    }
    SECTION("an isolated impulse on a constant image is removed") {
        GrayImage img(5, 5, 100);
        img(2, 2) = 255;
        CHECK(median_filter(img, 3) == GrayImage(5, 5, 100));
    }
    SECTION("window 1 is the identity") {
        GrayImage img = random_image(20, 13, 5);
        CHECK(median_filter(img, 1) == img);
    }
    SECTION("zero padding pulls constant borders down") {
        // 3x3 corner window on a constant image: 4 real pixels, 5 pad zeros
        GrayImage out = median_filter(GrayImage(8, 8, 200), 3, Border::zero);
        CHECK(out(0, 0) == 0);
        CHECK(out(4, 4) == 200);
    }
    SECTION("even or non-positive windows are rejected") {
        GrayImage img(4, 4, 0);
        CHECK_THROWS_AS(median_filter(img, 2), std::invalid_argument);
        CHECK_THROWS_AS(median_filter(img, 0), std::invalid_argument);
        CHECK_THROWS_AS(median_filter(img, -3), std::invalid_argument);
    }
}

TEST_CASE("mean filter") {
    SECTION("constant image is a fixed point") {
        GrayImage img(6, 6, 17);
        CHECK(mean_filter(img, 3) == img);
    }
    SECTION("hand-computed 3x3 center") {
        GrayImage img(3, 3, 0);
        img(1, 1) = 9;
        CHECK(mean_filter(img, 3)(1, 1) == 1);  // round(9/9)
    }
    SECTION("window 1 is the identity") {
        GrayImage img = random_image(11, 19, 6);
        CHECK(mean_filter(img, 1) == img);
    }
    SECTION("zero padding shrinks the corners") {
        GrayImage out = mean_filter(GrayImage(8, 8, 90), 3, Border::zero);
        CHECK(out(0, 0) == 40);  // round(4*90/9)
        CHECK(out(4, 4) == 90);
    }
}

TEST_CASE("gaussian kernel coefficients") {
    SECTION("n = 1 is a single unit weight") {
        Kernel k = gaussian_kernel(2.0, 1);
        REQUIRE(k.weights.size() == 1);
        CHECK(k.weights[0] == Catch::Approx(1.0));
    }
    SECTION("sigma 0.5, n 3 matches the hand-normalized exponentials") {
        Kernel k = gaussian_kernel(0.5, 3);
        CHECK(k.at(1, 1) == Catch::Approx(0.6193).margin(1e-4));
        CHECK(k.at(0, 1) == Catch::Approx(0.0838).margin(1e-4));
        CHECK(k.at(0, 0) == Catch::Approx(0.0113).margin(1e-4));
    }
    SECTION("weights sum to 1") {
        for (double sigma : {0.3, 0.5, 1.0, 4.0}) {
            for (int n : {1, 3, 5, 7}) {
                Kernel k = gaussian_kernel(sigma, n);
                double sum = 0.0;
                for (double w : k.weights) sum += w;
                CHECK(std::abs(sum - 1.0) < 1e-12);
            }
        }
    }
    SECTION("huge sigma flattens to the uniform kernel") {
        Kernel k = gaussian_kernel(1000.0, 3);
        for (double w : k.weights) CHECK(std::abs(w - 1.0 / 9.0) < 1e-4);
    }
    SECTION("invalid parameters are rejected") {
        CHECK_THROWS_AS(gaussian_kernel(0.0, 3), std::invalid_argument);
        CHECK_THROWS_AS(gaussian_kernel(-1.0, 3), std::invalid_argument);
        CHECK_THROWS_AS(gaussian_kernel(1.0, 4), std::invalid_argument);
    }
}

TEST_CASE("gaussian filter") {
    SECTION("constant image is a fixed point") {
        GrayImage img(10, 10, 77);
        CHECK(gaussian_filter(img, 0.5, 3) == img);
        CHECK(gaussian_filter(img, 2.0, 5) == img);
    }
    SECTION("a delta reproduces the kernel") {
        GrayImage img(7, 7, 0);
        img(3, 3) = 255;
        GrayImage out = gaussian_filter(img, 0.5, 3);
        Kernel k = gaussian_kernel(0.5, 3);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                auto expected = clamp_u8(255.0 * k.at(dx + 1, dy + 1));
                CHECK(out(3 + dx, 3 + dy) == expected);
            }
        CHECK(out(0, 0) == 0);
    }
    SECTION("flat limit equals the mean filter within one gray level") {
        GrayImage img = random_image(64, 64, 11);
        GrayImage a = gaussian_filter(img, 1000.0, 3);
        GrayImage b = mean_filter(img, 3);
        for (std::size_t i = 0; i < img.size(); ++i)
            CHECK(std::abs(static_cast<int>(a.pixels()[i]) - b.pixels()[i]) <= 1);
    }
    SECTION("separable passes equal direct 2D convolution in float space") {
        for (std::uint64_t seed : {21ULL, 22ULL}) {
            GrayImage img = random_image(32, 24, seed);
            for (Border border : {Border::replicate, Border::zero}) {
                auto sep = gaussian_filter_real(img, 0.8, 5, border);
                auto direct = noiselab::testing::reference_gaussian_real(img, 0.8, 5, border);
                REQUIRE(sep.size() == direct.size());
                for (std::size_t i = 0; i < sep.size(); ++i)
                    CHECK(std::abs(sep[i] - direct[i]) < 1e-9);
            }
        }
    }
}

TEST_CASE("wiener filter") {
    SECTION("zero noise power is the identity") {
        GrayImage img = random_image(24, 24, 31);
        CHECK(wiener_filter(img, 3, 0.0) == img);
        CHECK(wiener_filter(img, 5, 0.0) == img);
    }
    SECTION("constant image is a fixed point for any noise power") {
        GrayImage img(12, 9, 88);
        CHECK(wiener_filter(img, 3, 100.0) == img);
        CHECK(wiener_filter(img, 3, std::nullopt) == img);
    }
    SECTION("hand-computed center pixel") {
        // m = 20, local var = 800, signal var = 700, out = 20 + 700/800 * 80 = 90
        GrayImage img(3, 3, 10);
        img(1, 1) = 100;
        CHECK(wiener_filter(img, 3, 100.0)(1, 1) == 90);
    }
    SECTION("negative noise variance is rejected") {
        CHECK_THROWS_AS(wiener_filter(GrayImage(4, 4), 3, -1.0), std::invalid_argument);
    }
    SECTION("estimated noise power still smooths a noisy constant") {
        GrayImage clean(64, 64, 120);
        GrayImage noisy = add_gaussian(clean, 0.0, 64.0, Seed{77});
        GrayImage out = wiener_filter(noisy, 3, std::nullopt);
        double before = 0.0, after = 0.0;
        for (std::size_t i = 0; i < clean.size(); ++i) {
            before += std::pow(double(noisy.pixels()[i]) - 120.0, 2);
            after += std::pow(double(out.pixels()[i]) - 120.0, 2);
        }
        CHECK(after < before);
    }
}

TEST_CASE("optimized filters equal the brute-force reference") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GrayImage img = random_image(16, 16, 1000 + seed);
        for (int w : {3, 5}) {
            for (Border border : {Border::replicate, Border::zero}) {
                REQUIRE(median_filter(img, w, border) ==
                        noiselab::testing::reference_median(img, w, border));
                REQUIRE(mean_filter(img, w, border) ==
                        noiselab::testing::reference_mean(img, w, border));
                REQUIRE(gaussian_filter(img, 0.8, w, border) ==
                        noiselab::testing::reference_gaussian(img, 0.8, w, border));
                REQUIRE(wiener_filter(img, w, 100.0, border) ==
                        noiselab::testing::reference_wiener(img, w, 100.0, border));
                REQUIRE(wiener_filter(img, w, std::nullopt, border) ==
                        noiselab::testing::reference_wiener(img, w, std::nullopt, border));
                ++checked;
            }
        }
    }
    CHECK(checked == 400);
}

TEST_CASE("filters are translation equivariant away from borders") {
    const GrayImage patch = random_image(20, 20, 501);
    auto embed = [&](int ox, int oy) {
        GrayImage canvas = random_image(48, 48, 502);
        for (int y = 0; y < patch.height(); ++y)
            for (int x = 0; x < patch.width(); ++x) canvas(ox + x, oy + y) = patch(x, y);
        return canvas;
    };
    const GrayImage a = embed(4, 5);
    const GrayImage b = embed(11, 9);

    auto check_interior = [&](const GrayImage& fa, const GrayImage& fb, int w) {
        const int m = (w - 1) / 2;
        for (int y = m; y < patch.height() - m; ++y)
            for (int x = m; x < patch.width() - m; ++x)
                REQUIRE(fa(4 + x, 5 + y) == fb(11 + x, 9 + y));
    };
    for (int w : {3, 5}) {
        check_interior(median_filter(a, w), median_filter(b, w), w);
        check_interior(mean_filter(a, w), mean_filter(b, w), w);
        check_interior(gaussian_filter(a, 0.7, w), gaussian_filter(b, 0.7, w), w);
        check_interior(wiener_filter(a, w, 50.0), wiener_filter(b, w, 50.0), w);
    }
}

TEST_CASE("apply_filter dispatches on the spec") {
    GrayImage img = random_image(10, 10, 61);
    FilterSpec spec;
    spec.kind = FilterKind::median;
    spec.window = 3;
    CHECK(apply_filter(img, spec) == median_filter(img, 3));
    spec.kind = FilterKind::gaussian;
    spec.sigma = 1.1;
    spec.border = Border::zero;
    CHECK(apply_filter(img, spec) == gaussian_filter(img, 1.1, 3, Border::zero));
    spec.kind = FilterKind::wiener;
    spec.noise_variance = 25.0;
    CHECK(apply_filter(img, spec) == wiener_filter(img, 3, 25.0, Border::zero));
}
