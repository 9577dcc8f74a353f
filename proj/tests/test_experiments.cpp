#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"
#include "varlp/metrics.hpp"
#include "varlp/noise.hpp"
#include "varlp/phantom.hpp"

using namespace varlp;
using Catch::Approx;

TEST_CASE("phantom construction") {
    CHECK_THROWS_AS(generate_phantom(15), SideTooSmall);
    for (std::size_t side : {16ul, 64ul, 128ul}) {
        Signal img = generate_phantom(side);
        REQUIRE(img.size() == side * side);
        std::size_t zeros = 0;
        for (double v : img) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            zeros += v == 0.0;
        }
        CHECK(zeros > img.size() / 2); // sparse
        CHECK(generate_phantom(side) == img);
    }
    // all four intensities present at a reasonable resolution
    Signal img = generate_phantom(128);
    for (double level : {1.0, 0.8, 0.6, 0.4})
        CHECK(std::count(img.begin(), img.end(), level) > 0);
}

TEST_CASE("salt and pepper corrupts an exact count") {
    Rng rng(91);
    Signal y(46080);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = 0.5 + 0.4 * std::sin(static_cast<double>(i));

    SECTION("fraction 0.15 hits exactly 6912 entries") {
        Signal noisy = add_salt_pepper(y, 0.15, rng);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (noisy[i] != y[i]) ++changed;
        // an impulse may coincide with the previous value only at the
        // exact min/max, which this smooth signal does not hit
        CHECK(changed == 6912);
        double lo = *std::min_element(y.begin(), y.end());
        double hi = *std::max_element(y.begin(), y.end());
        for (std::size_t i = 0; i < y.size(); ++i)
            if (noisy[i] != y[i]) CHECK((noisy[i] == lo || noisy[i] == hi));
    }
    SECTION("fraction 0 is the identity") {
        CHECK(add_salt_pepper(y, 0.0, rng) == y);
    }
    SECTION("fraction 1 leaves only impulses") {
        Signal noisy = add_salt_pepper(y, 1.0, rng);
        double lo = *std::min_element(y.begin(), y.end());
        double hi = *std::max_element(y.begin(), y.end());
        for (double v : noisy) CHECK((v == lo || v == hi));
    }
    SECTION("explicit impulse values are honoured") {
        Signal noisy = add_salt_pepper(y, 0.5, rng, -7.0, 7.0);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (noisy[i] != y[i]) CHECK((noisy[i] == -7.0 || noisy[i] == 7.0));
    }
    SECTION("deterministic given the seed") {
        Rng a(4), b(4);
        CHECK(add_salt_pepper(y, 0.3, a) == add_salt_pepper(y, 0.3, b));
    }
}

TEST_CASE("speckle noise moments") {
    Rng rng(92);
    Signal y(100000, 2.0);

    SECTION("variance 0 is the identity") {
        CHECK(add_speckle(y, 0.0, 0.0, rng) == y);
    }
    SECTION("zero signal stays zero") {
        Signal z(100, 0.0);
        CHECK(add_speckle(z, 0.0, 0.01, rng) == z);
    }
    SECTION("sample mean of the relative perturbation within 4 sigma") {
        double mean = 0.0, variance = 0.01;
        Signal noisy = add_speckle(y, mean, variance, rng);
        double sum = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) sum += noisy[i] / y[i] - 1.0;
        double sample_mean = sum / static_cast<double>(y.size());
        double bound = 4.0 * std::sqrt(variance) / std::sqrt(static_cast<double>(y.size()));
        CHECK(std::fabs(sample_mean - mean) <= bound);
    }
}

TEST_CASE("split noise partitions background and foreground") {
    auto make_split = [](double threshold) {
        NoiseModel model;
        model.kind = NoiseKind::split;
        model.threshold = threshold;
        auto bg = std::make_shared<NoiseModel>();
        bg->kind = NoiseKind::salt_pepper;
        bg->fraction = 0.10;
        auto fg = std::make_shared<NoiseModel>();
        fg->kind = NoiseKind::speckle;
        fg->mean = 0.0;
        fg->variance = 0.01;
        model.background = bg;
        model.foreground = fg;
        return model;
    };

    SECTION("walnut-style mixed model corrupts each region per its contract") {
        Rng rng(93);
        Signal y(2000, 0.0);
        for (std::size_t i = 500; i < 1300; ++i) y[i] = 1.0 + 0.002 * static_cast<double>(i);
        NoiseModel model = make_split(1e-9);
        // distinguishable impulse values so every replacement is visible
        auto bg_model = std::make_shared<NoiseModel>(*model.background);
        bg_model->low = -5.0;
        bg_model->high = 5.0;
        model.background = bg_model;
        Signal noisy = add_split_noise(y, model, rng);

        std::size_t bg_changed = 0, fg_changed = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0.0 && noisy[i] != y[i]) bg_changed++;
            if (y[i] != 0.0 && noisy[i] != y[i]) fg_changed++;
        }
        CHECK(bg_changed == 120); // 10% of 1200 background entries
        CHECK(fg_changed > 780);  // speckle moves essentially every foreground entry
        for (std::size_t i = 0; i < 500; ++i)
            if (noisy[i] != 0.0) CHECK((noisy[i] == 5.0 || noisy[i] == -5.0));
    }
    SECTION("default impulses sit at the full sinogram range") {
        Rng rng(193);
        Signal y(2000, 0.0);
        for (std::size_t i = 500; i < 1300; ++i) y[i] = 1.0 + 0.002 * static_cast<double>(i);
        NoiseModel model = make_split(1e-9);
        Signal noisy = add_split_noise(y, model, rng);
        double hi = *std::max_element(y.begin(), y.end());
        std::size_t salt = 0;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == 0.0 && noisy[i] != 0.0) {
                CHECK(noisy[i] == hi); // pepper = min(y) = 0 is invisible here
                ++salt;
            }
        CHECK(salt > 30);
        CHECK(salt < 90); // about half of the 120 replacements
    }
    SECTION("threshold below the minimum applies the foreground model everywhere") {
        Rng rng(94);
        Signal y(400, 1.0);
        NoiseModel model = make_split(-1.0); // |y| <= -1 never holds
        Signal noisy = add_split_noise(y, model, rng);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < y.size(); ++i) changed += noisy[i] != y[i];
        CHECK(changed > 390);
    }
    SECTION("all-zero signal with impulsive background only") {
        Rng rng(95);
        Signal y(300, 0.0);
        NoiseModel model = make_split(1e-9);
        // impulses at explicit values; the zero signal has no range
        auto bg = std::make_shared<NoiseModel>(*model.background);
        bg->low = 0.0;
        bg->high = 5.0;
        model.background = bg;
        Signal noisy = add_split_noise(y, model, rng);
        std::size_t changed = 0;
        for (double v : noisy) changed += v != 0.0;
        CHECK(changed <= 30);
        CHECK(changed > 0);
        for (double v : noisy) CHECK((v == 0.0 || v == 5.0));
    }
}

TEST_CASE("gaussian noise is additive") {
    Rng rng(96);
    Signal y(50000, -1.0);
    Signal noisy = add_gaussian(y, 0.5, 0.04, rng);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += noisy[i] - y[i];
    double mean = sum / static_cast<double>(y.size());
    CHECK(std::fabs(mean - 0.5) <= 4.0 * 0.2 / std::sqrt(50000.0));
}

TEST_CASE("mae, psnr, ssim basics") {
    SECTION("identity") {
        Signal img = generate_phantom(32);
        CHECK(mae(img, img) == 0.0);
        CHECK(psnr(img, img) == kPsnrCap);
        CHECK(ssim(img, img) == Approx(1.0).epsilon(1e-12));
    }
    SECTION("hand values") {
        CHECK(mae({0.0, 0.0}, {1.0, 1.0}) == Approx(1.0));
        // peak 1, mse 0.01 -> 20 dB
        Signal ref(100, 0.0);
        ref[0] = 1.0;
        Signal x = ref;
        for (double& v : x) v += 0.1;
        CHECK(psnr(x, ref) == Approx(20.0).epsilon(1e-12));
    }
    SECTION("mae is a metric") {
        Rng rng(97);
        for (int trial = 0; trial < 30; ++trial) {
            auto a = testutil::random_vector(40, rng);
            auto b = testutil::random_vector(40, rng);
            auto c = testutil::random_vector(40, rng);
            CHECK(mae(a, b) == Approx(mae(b, a)));
            CHECK(mae(a, c) <= mae(a, b) + mae(b, c) + 1e-12);
            CHECK(mae(a, a) == 0.0);
            if (a != b) CHECK(mae(a, b) > 0.0);
        }
    }
    SECTION("ssim penalises structural changes and needs side >= 11") {
        Signal img = generate_phantom(64);
        Signal damaged = img;
        Rng rng(98);
        for (std::size_t i = 0; i < damaged.size(); i += 7)
            damaged[i] = rng.uniform();
        double s = ssim(damaged, img);
        CHECK(s < 0.9);
        CHECK(s >= -1.0);
        CHECK_THROWS_AS(ssim(Signal(100, 0.0), Signal(100, 0.0)), DimensionMismatch);
        CHECK_THROWS_AS(ssim(Signal(30, 0.0), Signal(30, 0.0)), DimensionMismatch);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(mae({1.0}, {1.0, 2.0}), DimensionMismatch);
        CHECK_THROWS_AS(psnr({1.0}, {1.0, 2.0}), DimensionMismatch);
    }
}
