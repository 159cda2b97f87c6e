#include <cmath>
#include <complex>
#include <cstdlib>

#include "doctest.h"
#include "helpers.hpp"
#include "qpm/error.hpp"
#include "qpm/joint_spectrum.hpp"
#include "qpm/units.hpp"

using namespace qpm;

namespace {

FreqGrid small_grid(double center_um, double span_nm, std::size_t n) {
    return FreqGrid::centered_um(center_um, span_nm, n);
}

}  // namespace

TEST_CASE("constant pump and dispersionless crystal give a matrix of ones") {
    // With equal pump index and signal/idler index the unpoled mismatch
    // vanishes identically; a huge period removes the grating term.
    auto c = test::constant_crystal(1.7, 1.7);
    c.pol = PolarizationConfig::type_0();  // all axes equal
    c.sellmeier.z = SellmeierSet::constant(1.7, Axis::Z);
    c.poling_period_um = 1e15;
    auto pump = PumpEnvelope::rectangular(2.0 * omega_from_wavelength_um(1.58), 1e18);
    auto js = build_jsa(pump, c, UniformProfile{0.03}, small_grid(1.58, 4.0, 33));
    for (double v : js.re) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(js.is_real());
}

TEST_CASE("normalization: sum |f|^2 dOs dOi = 1 within 1e-10") {
    auto c = test::design_crystal();
    auto pump = PumpEnvelope::gaussian(2.0 * omega_from_wavelength_um(1.582), 3e12);
    BuildOptions bo;
    bo.normalize = true;
    auto js = build_jsa(pump, c, UniformProfile{c.length_m()}, small_grid(1.582, 8.0, 257), bo);
    double s = 0.0;
    for (double v : js.re) s += v * v;
    s *= js.cell_area();
    CHECK(std::abs(s - 1.0) < 1e-10);
    js.validate();  // also checks the flag
}

TEST_CASE("design crystal JSA peaks at the degenerate point with an anti-diagonal pump band") {
    auto c = test::design_crystal();
    const double lam_deg = degenerate_qpm_wavelength(c);
    const double w0 = omega_from_wavelength_um(lam_deg);
    auto pump = PumpEnvelope::gaussian(2.0 * w0, 2.5e12);
    auto js = build_jsa(pump, c, UniformProfile{c.length_m()}, small_grid(lam_deg, 10.0, 251));
    auto I = jsi(js);

    std::size_t kmax = 0;
    for (std::size_t k = 1; k < I.size(); ++k)
        if (I[k] > I[kmax]) kmax = k;
    const std::size_t i = kmax / js.cols(), j = kmax % js.cols();
    // peak on the degenerate diagonal, at the center detuning
    CHECK(std::abs(js.omega_s[i]) < 0.1 * js.omega_s.back());
    CHECK(std::abs(js.omega_i[j]) < 0.1 * js.omega_i.back());
    // pump band: moving along the anti-diagonal away from center kills f
    const std::size_t n = js.rows();
    CHECK(I[(n / 2 + 60) * n + (n / 2 + 60)] < 0.2 * I[kmax]);  // pump suppressed on the diagonal
    CHECK(I[(n / 2 + 60) * n + (n / 2 - 60)] < 0.2 * I[kmax]);  // sinc suppressed anti-diagonally
}

TEST_CASE("build factorizes: multiplying the pump by alpha' multiplies f elementwise") {
    auto c = test::constant_crystal(1.7, 1.75);
    c.poling_period_um = 50.0;
    const double w0 = omega_from_wavelength_um(1.58);
    auto g1 = PumpEnvelope::gaussian(2.0 * w0, 4e12);
    // gaussian(sigma/sqrt2) = gaussian(sigma)^2 pointwise
    auto g2 = PumpEnvelope::gaussian(2.0 * w0, 4e12 / std::sqrt(2.0));
    auto grid = small_grid(1.58, 3.0, 65);
    auto a = build_jsa(g1, c, UniformProfile{0.02}, grid);
    auto b = build_jsa(g2, c, UniformProfile{0.02}, grid);
    const std::size_t n = grid.n_s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double wsum = grid.omega_s0 + a.omega_s[i] + grid.omega_i0 + a.omega_i[j];
            const double alpha1 = g1.amplitude(wsum);
            CHECK(b.re[i * n + j] == doctest::Approx(a.re[i * n + j] * alpha1).epsilon(1e-12));
        }
}

TEST_CASE("single full-length domain JSA equals the uniform JSA up to the sinc phase") {
    auto c = test::fitted_crystal();
    // the single +1 domain has no grating: compare against the unpoled uniform
    auto cu = c;
    cu.poling_period_um = 1e15;
    const double w0 = omega_from_wavelength_um(1.582);
    auto pump = PumpEnvelope::gaussian(2.0 * w0, 3e12);
    auto grid = small_grid(1.582, 2.0, 33);

    BuildOptions phase_on;
    phase_on.include_phase = true;
    auto uni = build_jsa(pump, cu, UniformProfile{c.length_m()}, grid, phase_on);
    auto dom = build_jsa(pump, c, DomainProfile{{0.0, c.length_m()}, +1}, grid);
    REQUIRE(!uni.is_real());
    REQUIRE(!dom.is_real());
    for (std::size_t k = 0; k < uni.re.size(); ++k) {
        CHECK(std::abs(uni.re[k] - dom.re[k]) < 1e-12);
        CHECK(std::abs(uni.im[k] - dom.im[k]) < 1e-12);
    }
}

TEST_CASE("jsi: modulus squared, phase-invariant") {
    JointSpectrum js;
    js.omega_s = {-1.0, 0.0, 1.0};
    js.omega_i = {-1.0, 0.0, 1.0};
    js.omega_s0 = js.omega_i0 = 10.0;
    js.re.assign(9, -0.5);
    auto I = jsi(js);
    for (double v : I) CHECK(v == 0.25);

    // attach a global phase: JSI unchanged
    js.im.assign(9, 0.0);
    for (std::size_t k = 0; k < 9; ++k) {
        const std::complex<double> z = std::polar(0.5, 1.2345);
        js.re[k] = z.real();
        js.im[k] = z.imag();
    }
    auto I2 = jsi(js);
    for (double v : I2) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("spdc_rate: unit pump returns the JSI, zero pump kills it, linear in N_p") {
    auto js = test::double_gaussian_jsa(1.0, 2.0, 33);
    auto I = jsi(js);
    auto r1 = spdc_rate(js, [](double) { return 1.0; });
    CHECK(r1 == I);
    auto r0 = spdc_rate(js, [](double) { return 0.0; });
    for (double v : r0) CHECK(v == 0.0);
    auto r2 = spdc_rate(js, [](double) { return 2.0; });
    for (std::size_t k = 0; k < I.size(); ++k) CHECK(r2[k] == 2.0 * I[k]);
}

TEST_CASE("grid and axis invariants") {
    FreqGrid g;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    auto js = test::double_gaussian_jsa(1.0, 1.0, 9);
    js.omega_s[3] = js.omega_s[4];  // break uniform spacing
    CHECK_THROWS_AS(js.validate(), DomainError);
}

TEST_CASE("grid fill is bit-identical for any thread count") {
    auto c = test::design_crystal();
    auto pump = PumpEnvelope::gaussian(2.0 * omega_from_wavelength_um(1.582), 3e12);
    auto grid = small_grid(1.582, 8.0, 151);
    setenv("QPM_THREADS", "1", 1);
    auto serial = build_jsa(pump, c, UniformProfile{c.length_m()}, grid);
    setenv("QPM_THREADS", "4", 1);
    auto parallel = build_jsa(pump, c, UniformProfile{c.length_m()}, grid);
    unsetenv("QPM_THREADS");
    CHECK(serial.re == parallel.re);
    CHECK(serial.im == parallel.im);
}

TEST_CASE("out-of-range grids propagate range errors") {
    auto c = test::design_crystal();
    auto pump = PumpEnvelope::gaussian(2.0 * omega_from_wavelength_um(1.58), 3e12);
    CHECK_THROWS_AS(
        build_jsa(pump, c, UniformProfile{0.03}, small_grid(2.99, 20.0, 17)),
        RangeError);
}
