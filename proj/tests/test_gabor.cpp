#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "mamseg/gabor.hpp"
#include "oracles.hpp"

using namespace mamseg;

namespace {

GaborParams random_params(std::mt19937& rng, bool random_psi) {
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> gamma(0.2, 2.0);
    std::uniform_real_distribution<double> lambda(2.0, 16.0);
    std::uniform_real_distribution<double> sigma(1.0, 8.0);
    std::uniform_real_distribution<double> psi(0.0, 2.0 * std::numbers::pi);
    GaborParams p;
    p.theta = theta(rng);
    p.gamma = gamma(rng);
    p.lambda = lambda(rng);
    p.sigma = sigma(rng);
    p.psi = random_psi ? psi(rng) : 0.0;
    return p;
}

FloatRaster raster_of(const std::vector<double>& values, int size) {
    FloatRaster r(size, size);
    r.values = values;
    return r;
}

}  // namespace

TEST_CASE("center sample equals cos(psi)") {
    std::mt19937 rng(42);
    for (int i = 0; i < 100; ++i) {
        const GaborParams p = random_params(rng, true);
        const GaborKernel k = make_kernel(p, 9);
        const int mid = 4;
        CHECK(std::abs(k.real_at(mid, mid) - std::cos(p.psi)) <= 1e-12);
        CHECK(std::abs(k.imag_at(mid, mid) - std::sin(p.psi)) <= 1e-12);
    }
}

TEST_CASE("theta and theta+pi: identical real parts, negated imaginary (psi = 0)") {
    std::mt19937 rng(43);
    for (int i = 0; i < 100; ++i) {
        GaborParams p = random_params(rng, false);
        const GaborKernel a = make_kernel(p, 11);
        p.theta += std::numbers::pi;
        const GaborKernel b = make_kernel(p, 11);
        for (std::size_t j = 0; j < a.real.size(); ++j) {
            REQUIRE(std::abs(a.real[j] - b.real[j]) <= 1e-12);
            REQUIRE(std::abs(a.imag[j] + b.imag[j]) <= 1e-12);
        }
    }
}

TEST_CASE("hand-derived samples: theta=0 gamma=1 sigma=2 lambda=4 psi=0") {
    GaborParams p;
    p.theta = 0.0;
    p.gamma = 1.0;
    p.sigma = 2.0;
    p.lambda = 4.0;
    p.psi = 0.0;
    const GaborKernel k = make_kernel(p, 5);
    const int mid = 2;
    // x=1,y=0: envelope exp(-1/8), phase pi/2 -> real 0
    CHECK(std::abs(k.real_at(mid, mid + 1) - 0.0) <= 1e-12);
    // x=0,y=1: envelope exp(-1/8), phase 0 -> real exp(-1/8)
    const double exp_m18 = 0.8824969025845954;
    CHECK(std::abs(k.real_at(mid + 1, mid) - exp_m18) <= 1e-12);
    // center exactly 1
    CHECK(k.real_at(mid, mid) == 1.0);
    CHECK(std::abs(k.imag_at(mid, mid)) <= 1e-12);
}

TEST_CASE("kernel synthesis preconditions") {
    GaborParams p;
    CHECK_THROWS_AS(make_kernel(p, 4), data_error);
    CHECK_THROWS_AS(make_kernel(p, 1), data_error);
    p.lambda = -1.0;
    CHECK_THROWS_AS(make_kernel(p, 5), data_error);
}

TEST_CASE("bank orientations are k*pi/n") {
    const GaborParams base = default_params_for(9);
    const FilterBank b8 = make_bank(base, 8, 9);
    REQUIRE(b8.thetas.size() == 8);
    for (int k = 0; k < 8; ++k)
        CHECK(b8.thetas[k] == doctest::Approx(k * std::numbers::pi / 8.0).epsilon(1e-15));
    // 22.5 degree steps
    CHECK(b8.thetas[1] == doctest::Approx(22.5 * std::numbers::pi / 180.0));

    const FilterBank b1 = make_bank(base, 1, 9);
    REQUIRE(b1.thetas.size() == 1);
    CHECK(b1.thetas[0] == 0.0);

    const FilterBank b4 = make_bank(base, 4, 9);
    for (int k = 0; k < 4; ++k)
        CHECK(b4.thetas[k] == doctest::Approx(k * std::numbers::pi / 4.0).epsilon(1e-15));

    CHECK_THROWS_AS(make_bank(base, 0, 9), data_error);
}

TEST_CASE("bank kernels have zero-mean real parts") {
    const FilterBank bank = make_bank(default_params_for(15), 8, 15);
    for (const GaborKernel& k : bank.kernels) {
        double sum = 0.0;
        for (double v : k.real) sum += v;
        CHECK(std::abs(sum / k.real.size()) <= 1e-15);
    }
}

TEST_CASE("kernel_size_for follows the tenth-of-image rule") {
    CHECK(kernel_size_for(1024, 1024) == 101);
    CHECK(kernel_size_for(300, 400) == 29);
    CHECK(kernel_size_for(400, 300) == 29);
    CHECK(kernel_size_for(30, 30) == 3);
    CHECK(kernel_size_for(100, 2000) == 9);
    CHECK_THROWS_AS(kernel_size_for(29, 1000), data_error);
}

TEST_CASE("bank response on a constant image is near zero") {
    GrayImage img(40, 40, 8, 200);
    const FilterBank bank = make_bank(default_params_for(9), 8, 9);
    const FloatRaster resp = bank_response(img, bank);
    for (double v : resp.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1e-9);
    }
}

TEST_CASE("singleton bank equals rectified convolution") {
    std::mt19937 rng(77);
    const GrayImage img = oracle::random_image(rng, 24, 20, 8);
    const FilterBank bank = make_bank(default_params_for(7), 1, 7);
    const FloatRaster got = bank_response(img, bank);
    const FloatRaster conv =
        oracle::convolve(to_raster(img), raster_of(bank.kernels[0].real, 7), Border::Replicate);
    for (std::size_t i = 0; i < got.values.size(); ++i) {
        const double want = std::max(conv.values[i], 0.0);
        REQUIRE(std::abs(got.values[i] - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("a bright horizontal line responds strongest in the aligned kernel") {
    // Line along x: the kernel whose stripes align with it (theta = 90 deg,
    // sinusoid varying along y) must dominate at the line center.
    GrayImage img(41, 41, 8, 0);
    for (int c = 0; c < 41; ++c) {
        img.at(20, c) = 255;
        img.at(21, c) = 255;
    }
    const int size = 9;
    GaborParams base;
    base.gamma = 0.5;
    base.lambda = 4.0;
    base.sigma = 0.56 * 4.0;
    base.psi = 0.0;
    const FilterBank bank = make_bank(base, 8, size);

    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < bank.kernels.size(); ++k) {
        const FloatRaster resp = oracle::convolve(
            to_raster(img), raster_of(bank.kernels[k].real, size), Border::Replicate);
        if (resp.at(20, 20) > best) {
            best = resp.at(20, 20);
            best_k = k;
        }
    }
    CHECK(bank.thetas[best_k] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));

    // and the bank response at the line equals that maximum
    const FloatRaster resp = bank_response(img, bank);
    CHECK(resp.at(20, 20) == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("suppress_vessels: gain 0 and null responses are identities") {
    std::mt19937 rng(11);
    const GrayImage img = oracle::random_image(rng, 16, 12, 8);
    FloatRaster resp(16, 12, 0.0);
    CHECK(suppress_vessels(img, resp, 0.0).pixels == img.pixels);

    FloatRaster live(16, 12);
    std::uniform_real_distribution<double> d(0.0, 100.0);
    for (auto& v : live.values) v = d(rng);
    CHECK(suppress_vessels(img, live, 0.0).pixels == img.pixels);
    CHECK(suppress_vessels(img, resp, 1.5).pixels == img.pixels);
}

TEST_CASE("suppress_vessels stays inside the image dynamic range") {
    std::mt19937 rng(12);
    const GrayImage img = oracle::random_image(rng, 16, 16, 8);
    FloatRaster resp(16, 16);
    std::uniform_real_distribution<double> d(-50.0, 400.0);
    for (auto& v : resp.values) v = d(rng);
    for (double gain : {0.25, 1.0, 3.0}) {
        const GrayImage out = suppress_vessels(img, resp, gain);
        for (std::size_t i = 0; i < out.pixels.size(); ++i) {
            CHECK(out.pixels[i] <= img.max_value());
            CHECK(out.pixels[i] <= img.pixels[i]);  // nonnegative response only subtracts
        }
    }
    FloatRaster bad(15, 16, 0.0);
    CHECK_THROWS_AS(suppress_vessels(img, bad, 1.0), data_error);
}

TEST_CASE("a suppressed bright line drops below the plateau level") {
    // Phantom: flat plateau 200 with a 2px line at 250. After subtraction of
    // the rescaled response with gain 1, line pixels fall below 200.
    GrayImage img(64, 64, 8, 200);
    for (int c = 0; c < 64; ++c) {
        img.at(31, c) = 250;
        img.at(32, c) = 250;
    }
    const int size = 9;
    GaborParams base;
    base.gamma = 0.5;
    base.lambda = 4.0;
    base.sigma = 0.56 * 4.0;
    const FilterBank bank = make_bank(base, 8, size);
    const FloatRaster resp = bank_response(img, bank);
    const GrayImage out = suppress_vessels(img, resp, 1.0);
    CHECK(out.at(31, 32) < 200);
    CHECK(out.at(32, 32) < 200);
}
