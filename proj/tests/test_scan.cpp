#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qpm/error.hpp"
#include "qpm/phase_match.hpp"
#include "qpm/scan.hpp"
#include "qpm/units.hpp"

using namespace qpm;

namespace {

ScanConfig small_sfg() {
    ScanConfig sc;
    sc.axis1 = {1580.0, 1584.0, 0.2};
    sc.axis2 = {1580.0, 1584.0, 0.2};
    sc.calibration_cps = 1e6;
    sc.sample = true;
    sc.has_seed = true;
    sc.seed = 1;
    return sc;
}

}  // namespace

TEST_CASE("sfg_expected_rate: peak calibration plus dark") {
    auto c = test::constant_crystal(1.7, 1.7);
    c.pol = PolarizationConfig::type_0();
    c.poling_period_um = 1e15;  // dk = 0 identically
    const double w = omega_from_wavelength_um(1.58);
    DetectorModel det{1.0, 100.0, 1.0};
    CHECK(sfg_expected_rate(w, w, c, 1e6, 1.0, 1.0, det) == doctest::Approx(1000100.0).epsilon(1e-12));
    CHECK(sfg_expected_rate(w, w, c, 1e6, 0.0, 1.0, det) == 100.0);  // null input -> dark only
    // doubling both inputs quadruples the signal term
    const double r1 = sfg_expected_rate(w, w, c, 1e6, 1.0, 1.0, det) - 100.0;
    const double r4 = sfg_expected_rate(w, w, c, 1e6, 2.0, 2.0, det) - 100.0;
    CHECK(r4 == doctest::Approx(4.0 * r1).epsilon(1e-12));
}

TEST_CASE("noiseless expected rates equal cal*N1*N2*|phi|^2 + dark to 1e-12 relative") {
    auto c = test::fitted_crystal();
    auto sc = small_sfg();
    sc.sample = false;
    sc.n1 = [](double nm) { return 1.0 + 1e-4 * (nm - 1580.0); };
    sc.n2 = [](double nm) { return 2.0 - 1e-4 * (nm - 1580.0); };
    DetectorModel det{0.87, 55.0, 1.0};
    auto r = simulate_sfg_scan(sc, c, det);
    REQUIRE(r.counts.empty());
    const std::size_t n2 = r.axis2_nm.size();
    for (std::size_t i = 0; i < r.axis1_nm.size(); ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            const double w1 = omega_from_wavelength_nm(r.axis1_nm[i]);
            const double w2 = omega_from_wavelength_nm(r.axis2_nm[j]);
            const double phi2 =
                std::norm(pm_amplitude_uniform(phase_mismatch(w1, w2, c), c.length_m(), false));
            const double expect =
                0.87 * 1e6 * sc.n1(r.axis1_nm[i]) * sc.n2(r.axis2_nm[j]) * phi2 + 55.0;
            CHECK(r.expected_rate[i * n2 + j] == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("sampling is deterministic in the seed and keyed per point") {
    auto c = test::fitted_crystal();
    auto sc = small_sfg();
    DetectorModel det{1.0, 100.0, 1.0};
    auto a = simulate_sfg_scan(sc, c, det);
    auto b = simulate_sfg_scan(sc, c, det);
    CHECK(a.counts == b.counts);
    sc.seed = 2;
    auto d = simulate_sfg_scan(sc, c, det);
    CHECK(a.counts != d.counts);
}

TEST_CASE("scan config contract failures") {
    auto c = test::fitted_crystal();
    DetectorModel det{1.0, 100.0, 1.0};
    auto sc = small_sfg();
    sc.has_seed = false;
    CHECK_THROWS_AS(simulate_sfg_scan(sc, c, det), ConfigError);  // seed required
    sc = small_sfg();
    sc.axis1.step_nm = 0.0;
    CHECK_THROWS_AS(simulate_sfg_scan(sc, c, det), ConfigError);
    sc = small_sfg();
    det.integration_time_s = 0.0;
    CHECK_THROWS_AS(simulate_sfg_scan(sc, c, det), ConfigError);
}

TEST_CASE("SHG composite equals the sum of its components plus dark, exactly") {
    std::vector<ShgProcess> procs{{"ii", test::fitted_crystal(), 1.0},
                                  {"i", test::type_i_crystal(), 0.48},
                                  {"0", test::type_0_crystal(), 0.20}};
    for (auto& p : procs) p.crystal.duty = 0.45;
    ScanConfig sc;
    sc.axis1 = {1480.0, 1590.0, 0.5};
    sc.diagonal = true;
    sc.sample = false;
    DetectorModel det{1.0, 100.0, 1.0};
    auto r = simulate_shg_scan(sc, procs, det);
    REQUIRE(r.components.size() == 3);
    for (std::size_t k = 0; k < r.expected_rate.size(); ++k) {
        // accumulate in the documented order (dark first, then each process)
        double sum = 100.0;
        for (const auto& comp : r.components) sum += comp[k];
        CHECK(r.expected_rate[k] == sum);  // bitwise-equal
    }
}

TEST_CASE("SHG with all relative amplitudes zero gives dark counts only") {
    std::vector<ShgProcess> procs{{"ii", test::fitted_crystal(), 0.0}};
    ScanConfig sc;
    sc.axis1 = {1570.0, 1590.0, 0.5};
    sc.diagonal = true;
    sc.sample = true;
    sc.has_seed = true;
    sc.seed = 3;
    DetectorModel det{1.0, 100.0, 1.0};
    auto r = simulate_shg_scan(sc, procs, det);
    for (double v : r.expected_rate) CHECK(v == 100.0);
    double mean = 0.0;
    for (auto cnt : r.counts) mean += static_cast<double>(cnt);
    mean /= static_cast<double>(r.counts.size());
    CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(100.0 / static_cast<double>(r.counts.size())));
}

TEST_CASE("SHG warns when a process cannot match inside the sweep") {
    auto far = test::fitted_crystal();
    far.poling_period_um = 30.0;  // matches nowhere near the sweep
    std::vector<ShgProcess> procs{{"far", far, 1.0}};
    ScanConfig sc;
    sc.axis1 = {1570.0, 1580.0, 1.0};
    sc.diagonal = true;
    sc.sample = false;
    auto r = simulate_shg_scan(sc, procs, DetectorModel{1.0, 10.0, 1.0});
    CHECK(!r.warnings.empty());
}

TEST_CASE("snr: 40 dB at peak 1e6 over dark 100; 0 dB at peak = dark; 50 dB at dark 10") {
    ScanResult r;
    r.detector = DetectorModel{1.0, 100.0, 1.0};
    r.expected_rate = {100.0, 1000100.0, 50000.0};
    CHECK(snr(r) == doctest::Approx(40.0).epsilon(1e-12));
    r.expected_rate = {200.0};
    CHECK(snr(r) == doctest::Approx(0.0).epsilon(1e-12));
    r.detector.dark_count_rate = 10.0;
    r.expected_rate = {1000010.0};
    CHECK(snr(r) == doctest::Approx(50.0).epsilon(1e-12));
    r.detector.dark_count_rate = 0.0;
    CHECK_THROWS_AS(snr(r), DomainError);
}
