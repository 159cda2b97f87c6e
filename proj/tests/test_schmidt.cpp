#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "helpers.hpp"
#include "qpm/error.hpp"
#include "qpm/schmidt.hpp"
#include "qpm/units.hpp"

using namespace qpm;

TEST_CASE("separable JSA: single Schmidt mode, unit purity") {
    auto js = test::double_gaussian_jsa(1.0, 1.0, 129);  // a = b is separable
    auto r = schmidt_decompose(js);
    CHECK(std::abs(r.coefficients[0] - 1.0) < 1e-10);
    CHECK(std::abs(r.purity - 1.0) < 1e-10);
    CHECK(std::abs(r.schmidt_number - 1.0) < 1e-10);
}

TEST_CASE("double-Gaussian purity matches the analytic 2 sqrt(ab)/(a+b)") {
    for (double b : {0.25, 1.0, 4.0}) {
        auto js = test::double_gaussian_jsa(1.0, b, 512);
        const double p = schmidt_decompose(js).purity;
        const double want = 2.0 * std::sqrt(b) / (1.0 + b);
        CHECK(std::abs(p - want) < 1e-3);
    }
}

TEST_CASE("purity is stable under grid refinement for smooth JSAs") {
    const double b = 3.0;
    auto p256 = schmidt_decompose(test::double_gaussian_jsa(1.0, b, 256)).purity;
    auto p512 = schmidt_decompose(test::double_gaussian_jsa(1.0, b, 512)).purity;
    CHECK(std::abs(p256 - p512) < 1e-3);
}

TEST_CASE("normalization and K*P = 1 invariants") {
    auto js = test::double_gaussian_jsa(1.0, 5.0, 257);
    auto r = schmidt_decompose(js);
    double s2 = 0.0;
    for (double l : r.coefficients) s2 += l * l;
    CHECK(std::abs(s2 - 1.0) < 1e-10);  // retained modes carry all the weight here
    CHECK(std::abs(r.schmidt_number * r.purity - 1.0) < 1e-10);
    CHECK(r.purity > 1.0 / static_cast<double>(js.rows()));
    CHECK(r.purity <= 1.0 + 1e-12);
    // descending coefficients
    for (std::size_t k = 1; k < r.coefficients.size(); ++k)
        CHECK(r.coefficients[k] <= r.coefficients[k - 1]);
}

TEST_CASE("I and g2 identities") {
    auto js = test::double_gaussian_jsa(1.0, 2.5, 181);
    const double P = schmidt_decompose(js).purity;
    CHECK(std::abs(indistinguishability(js) - P) < 1e-15);
    CHECK(std::abs(g2_from_jsa(js) - (1.0 + P)) < 1e-12);
    CHECK(std::abs((g2_from_jsa(js) - 1.0) - indistinguishability(js)) < 1e-12);
}

TEST_CASE("I is invariant under global phase and positive scaling") {
    auto js = test::double_gaussian_jsa(1.0, 2.0, 101);
    const double base = indistinguishability(js);

    auto scaled = js;
    for (double& v : scaled.re) v *= 77.7;
    CHECK(std::abs(indistinguishability(scaled) - base) < 1e-12);

    auto phased = js;
    phased.im.resize(phased.re.size());
    for (std::size_t k = 0; k < phased.re.size(); ++k) {
        const std::complex<double> z = std::polar(js.re[k], 0.9876);
        phased.re[k] = z.real();
        phased.im[k] = z.imag();
    }
    CHECK(std::abs(indistinguishability(phased) - base) < 1e-10);
}

TEST_CASE("transpose leaves the Schmidt spectrum unchanged") {
    auto js = test::double_gaussian_jsa(1.0, 3.5, 97);
    auto t = js;
    const std::size_t n = js.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.re[j * n + i] = js.re[i * n + j];
    auto a = schmidt_decompose(js);
    auto b = schmidt_decompose(t);
    REQUIRE(a.coefficients.size() == b.coefficients.size());
    for (std::size_t k = 0; k < a.coefficients.size(); ++k)
        CHECK(std::abs(a.coefficients[k] - b.coefficients[k]) < 1e-10);
}

TEST_CASE("all-zero amplitude is rejected") {
    auto js = test::double_gaussian_jsa(1.0, 1.0, 17);
    for (double& v : js.re) v = 0.0;
    CHECK_THROWS_AS(schmidt_decompose(js), DomainError);
}

TEST_CASE("bandwidth sweep: degenerate range collapses to a single point") {
    auto c = test::design_crystal();
    const double lam = degenerate_qpm_wavelength(c);
    auto grid = FreqGrid::centered_um(lam, 6.0, 64);
    auto scan = optimize_pump_bandwidth(c, UniformProfile{c.length_m()}, PumpShape::Gaussian, 0.5,
                                        0.5, grid);
    CHECK(scan.curve.size() == 1);
    CHECK(scan.best_bandwidth_nm == 0.5);
    CHECK(scan.best_indistinguishability == scan.curve[0].indistinguishability);
}

TEST_CASE("bandwidth sweep is identical serially and in parallel") {
    auto c = test::design_crystal();
    const double lam = degenerate_qpm_wavelength(c);
    auto grid = FreqGrid::centered_um(lam, 6.0, 96);
    BandwidthSweepOptions opts;
    opts.coarse_points = 9;

    setenv("QPM_THREADS", "1", 1);
    auto serial = optimize_pump_bandwidth(c, UniformProfile{c.length_m()}, PumpShape::Gaussian,
                                          0.2, 2.0, grid, opts);
    setenv("QPM_THREADS", "4", 1);
    auto parallel = optimize_pump_bandwidth(c, UniformProfile{c.length_m()}, PumpShape::Gaussian,
                                            0.2, 2.0, grid, opts);
    unsetenv("QPM_THREADS");
    REQUIRE(serial.curve.size() == parallel.curve.size());
    for (std::size_t k = 0; k < serial.curve.size(); ++k) {
        CHECK(serial.curve[k].bandwidth_nm == parallel.curve[k].bandwidth_nm);
        CHECK(serial.curve[k].indistinguishability == parallel.curve[k].indistinguishability);
    }
    CHECK(serial.best_bandwidth_nm == parallel.best_bandwidth_nm);
    CHECK(serial.best_indistinguishability == parallel.best_indistinguishability);
}

TEST_CASE("error-model operations") {
    CHECK(coincidence_error_ratio(0.01, 0.01) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coincidence_error_ratio(0.5, 0.0) == 0.0);
    CHECK(coincidence_error_ratio(0.1, 0.001) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK_THROWS_AS(coincidence_error_ratio(0.0, 0.01), DomainError);

    CHECK(sfg_error_probability(0.01) == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(sfg_error_probability(0.0) == 0.0);
    CHECK(sfg_error_probability(1.0) == 1.0);
    CHECK_THROWS_AS(sfg_error_probability(1.5), DomainError);
}
