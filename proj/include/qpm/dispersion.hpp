#pragma once

#include <utility>

#include "qpm/sellmeier.hpp"

namespace qpm {

struct PolarizationConfig {
    Axis pump = Axis::Y;
    Axis signal = Axis::Z;
    Axis idler = Axis::Y;

    // The three named QPM configurations of this crystal family.
    static PolarizationConfig type_ii() { return {Axis::Y, Axis::Z, Axis::Y}; }  // Y -> Z + Y
    static PolarizationConfig type_i() { return {Axis::Z, Axis::Y, Axis::Y}; }   // Z -> Y + Y
    static PolarizationConfig type_0() { return {Axis::Z, Axis::Z, Axis::Z}; }   // Z -> Z + Z
};

struct CrystalSpec {
    double poling_period_um = 46.1;
    double length_mm = 30.0;
    double duty = 0.5;          // fraction of each period with positive nonlinearity
    int qpm_order = 1;          // m >= 1
    int grating_sign = +1;      // signed grating branch: dk = dk0 - sign * 2 pi m / period
    PolarizationConfig pol;
    SellmeierData sellmeier;

    double length_m() const { return length_mm * 1e-3; }
    double poling_period_m() const { return poling_period_um * 1e-6; }
    const SellmeierSet& set_for(Axis a) const { return sellmeier.for_axis(a); }

    // Throws ConfigError on violated invariants (period/length/duty/order).
    void validate() const;
};

// n(lambda) for one axis of a set; range-checked.
double refractive_index(double lambda_um, const SellmeierSet& set);

// k(omega) = n * omega / c, rad/m.
double wavenumber(double omega, const SellmeierSet& set);

// k'(omega) = dk/domega = (n - lambda dn/dlambda)/c, s/m.
// Closed form from the Sellmeier derivative; no finite differences.
double inverse_group_velocity(double omega, const SellmeierSet& set);

// D_s = k'_p - k'_s and D_i = k'_p - k'_i at the given central frequencies,
// with the pump at omega_s0 + omega_i0.  Group-velocity matching means
// D_s ~ -D_i.
std::pair<double, double> group_mismatch_D(const CrystalSpec& crystal,
                                           double omega_s0, double omega_i0);

// Unpoled mismatch kp(w1+w2) - ks(w1) - ki(w2), rad/m.
double phase_mismatch_unpoled(double omega_1, double omega_2, const CrystalSpec& crystal);

// QPM mismatch: unpoled term minus the signed grating vector
// grating_sign * 2 pi m / period.  Zero defines the matched contour.
double phase_mismatch(double omega_1, double omega_2, const CrystalSpec& crystal);

// Degenerate QPM wavelength (um): first sign change of dk(w, w) scanning the
// valid range upward, bracketed then polished (bisection + secant) until
// |dk| < 1e-6 rad/m.  Near a group-velocity-matched design point dk(w, w) is
// quadratically flat and may cross zero twice a few nm apart; the lower
// crossing is returned.  Throws DomainError when no sign change exists.
double degenerate_qpm_wavelength(const CrystalSpec& crystal);

}  // namespace qpm
