#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qpm/kernels.hpp"

using namespace qpm::kernels;

namespace {

std::vector<double> test_arguments() {
    std::vector<double> x{0.0,    1e-300, -1e-300, 1e-8,   -1e-8, 0.5,   -0.5,
                          1.5707, 3.1415, -3.1415, 6.2831, 100.0, -100.0};
    // sinc zeros and lobe tops at growing magnitude
    for (int k = 1; k <= 40; ++k) {
        x.push_back(k * 3.141592653589793);
        x.push_back((k + 0.5) * 3.141592653589793);
    }
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-2.0e4, 2.0e4);
    for (int k = 0; k < 4000; ++k) x.push_back(u(gen));
    std::uniform_real_distribution<double> v(-20.0, 20.0);
    for (int k = 0; k < 4000; ++k) x.push_back(v(gen));
    return x;
}

}  // namespace

TEST_CASE("scalar sinc values") {
    const Backend& b = scalar_backend();
    double x[3] = {0.0, 2.0 * M_PI, 1.5 * M_PI};  // peak, first zero, second-lobe top
    double y[3];
    b.sinc(x, y, 3);
    CHECK(y[0] == 1.0);
    CHECK(std::abs(y[1]) < 1e-12);
    CHECK(std::abs(std::abs(y[2]) - 2.0 / (3.0 * M_PI)) < 1e-12);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const Backend* simd = avx2_backend();
    if (!simd) {
        MESSAGE("AVX2 backend not available; skipping equivalence checks");
        return;
    }
    auto x = test_arguments();
    const std::size_t n = x.size();
    std::vector<double> a(n), b(n), ai(n), bi(n);

    SUBCASE("sinc: |diff| <= 1e-13") {
        scalar_backend().sinc(x.data(), a.data(), n);
        simd->sinc(x.data(), b.data(), n);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-13);
    }
    SUBCASE("sinc_mag2: |diff| <= 1e-13") {
        scalar_backend().sinc_mag2(x.data(), a.data(), n);
        simd->sinc_mag2(x.data(), b.data(), n);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-13);
    }
    SUBCASE("sinc_phase: |diff| <= 1e-13 on both parts") {
        scalar_backend().sinc_phase(x.data(), a.data(), ai.data(), n);
        simd->sinc_phase(x.data(), b.data(), bi.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(a[k] - b[k]) <= 1e-13);
            CHECK(std::abs(ai[k] - bi[k]) <= 1e-13);
        }
    }
    SUBCASE("exp_neg_sq: relative 1e-13") {
        std::vector<double> t;
        for (double v : x) t.push_back(std::fmod(v, 12.0));  // exp(-144) ~ 3e-63 still normal
        scalar_backend().exp_neg_sq(t.data(), a.data(), n);
        simd->exp_neg_sq(t.data(), b.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            const double denom = std::max(a[k], 1e-300);
            CHECK(std::abs(a[k] - b[k]) / denom <= 1e-13);
        }
    }
    SUBCASE("mag2 exact") {
        scalar_backend().mag2(x.data(), x.data(), a.data(), n);
        simd->mag2(x.data(), x.data(), b.data(), n);
        for (std::size_t k = 0; k < n; ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("exp_neg_sq handles deep underflow") {
    double t[2] = {26.0, 1000.0};  // exp(-676) ~ 1e-294, still a normal double
    double y[2];
    active().exp_neg_sq(t, y, 2);
    CHECK(y[0] == doctest::Approx(std::exp(-676.0)).epsilon(1e-12));
    CHECK(y[1] == 0.0);
}

TEST_CASE("backend forcing") {
    force("scalar");
    CHECK(std::string(active().name) == "scalar");
    force("auto");
    if (avx2_backend()) {
        force("avx2");
        CHECK(std::string(active().name) == "avx2");
        force("auto");
    }
    CHECK_THROWS(force("sse9"));
    force("auto");
}
