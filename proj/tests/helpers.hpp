#pragma once

#include <cmath>
#include <string>

#include "qpm/dispersion.hpp"
#include "qpm/joint_spectrum.hpp"
#include "qpm/sellmeier.hpp"
#include "qpm/units.hpp"

namespace qpm::test {

inline std::string data_dir() { return QPM_DATA_DIR; }

inline const SellmeierData& ktp() {
    static SellmeierData d = load_sellmeier_file(data_dir() + "/ktp_sellmeier.json");
    return d;
}

// The design crystal: Type-II, m = 1, 46.1 um period, 30 mm, 50% duty.
inline CrystalSpec design_crystal() {
    CrystalSpec c;
    c.poling_period_um = 46.1;
    c.length_mm = 30.0;
    c.duty = 0.5;
    c.qpm_order = 1;
    c.grating_sign = -1;
    c.pol = PolarizationConfig::type_ii();
    c.sellmeier = ktp();
    return c;
}

// Best-fit crystal of the reference measurement.
inline CrystalSpec fitted_crystal() {
    CrystalSpec c = design_crystal();
    c.poling_period_um = 46.125;
    c.length_mm = 29.0;
    return c;
}

inline CrystalSpec type_i_crystal() {
    CrystalSpec c = design_crystal();
    c.poling_period_um = 45.807;
    c.qpm_order = 7;
    c.grating_sign = +1;
    c.pol = PolarizationConfig::type_i();
    return c;
}

inline CrystalSpec type_0_crystal() {
    CrystalSpec c = design_crystal();
    c.poling_period_um = 46.010;
    c.qpm_order = 2;
    c.grating_sign = +1;
    c.pol = PolarizationConfig::type_0();
    return c;
}

// Dispersionless crystal built from constant-index stubs.
inline CrystalSpec constant_crystal(double ny, double nz) {
    CrystalSpec c;
    c.sellmeier.y = SellmeierSet::constant(ny, Axis::Y);
    c.sellmeier.z = SellmeierSet::constant(nz, Axis::Z);
    c.pol = PolarizationConfig::type_ii();
    return c;
}

// Double-Gaussian JSA exp(-a (Os+Oi)^2 - b (Os-Oi)^2) on an n^2 grid
// spanning +-6 sigma of the wider factor (axis units are arbitrary for
// Schmidt purposes).
inline JointSpectrum double_gaussian_jsa(double a, double b, std::size_t n) {
    JointSpectrum js;
    js.omega_s0 = 1.0e15;
    js.omega_i0 = 1.0e15;
    const double span = 12.0 / std::sqrt(std::min(a, b));
    js.omega_s.resize(n);
    js.omega_i.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = -0.5 * span + span * static_cast<double>(k) / static_cast<double>(n - 1);
        js.omega_s[k] = v;
        js.omega_i[k] = v;
    }
    js.re.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = js.omega_s[i] + js.omega_i[j];
            const double d = js.omega_s[i] - js.omega_i[j];
            js.re[i * n + j] = std::exp(-a * s * s - b * d * d);
        }
    return js;
}

}  // namespace qpm::test
