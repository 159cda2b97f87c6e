#include "qpm/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "qpm/error.hpp"
#include "qpm/units.hpp"

namespace qpm {

void CrystalSpec::validate() const {
    if (!(poling_period_um > 0.0)) throw ConfigError("crystal: poling period must be > 0");
    if (!(length_mm > 0.0)) throw ConfigError("crystal: length must be > 0");
    if (!(duty > 0.0 && duty < 1.0)) throw ConfigError("crystal: duty cycle must be in (0,1)");
    if (qpm_order < 1) throw ConfigError("crystal: QPM order must be >= 1");
    if (grating_sign != 1 && grating_sign != -1)
        throw ConfigError("crystal: grating sign must be +1 or -1");
}

double refractive_index(double lambda_um, const SellmeierSet& set) {
    return set.index(lambda_um);
}

double wavenumber(double omega, const SellmeierSet& set) {
    const double lam_um = wavelength_um_from_omega(omega);
    return set.index(lam_um) * omega / kSpeedOfLight;
}

double inverse_group_velocity(double omega, const SellmeierSet& set) {
    const double lam_um = wavelength_um_from_omega(omega);
    // k' = (n - lambda dn/dlambda)/c; the um factors cancel.
    return (set.index(lam_um) - lam_um * set.index_derivative(lam_um)) / kSpeedOfLight;
}

std::pair<double, double> group_mismatch_D(const CrystalSpec& crystal,
                                           double omega_s0, double omega_i0) {
    const double omega_p = omega_s0 + omega_i0;
    const double kp = inverse_group_velocity(omega_p, crystal.set_for(crystal.pol.pump));
    const double ks = inverse_group_velocity(omega_s0, crystal.set_for(crystal.pol.signal));
    const double ki = inverse_group_velocity(omega_i0, crystal.set_for(crystal.pol.idler));
    return {kp - ks, kp - ki};
}

double phase_mismatch_unpoled(double omega_1, double omega_2, const CrystalSpec& crystal) {
    const double kp = wavenumber(omega_1 + omega_2, crystal.set_for(crystal.pol.pump));
    const double ks = wavenumber(omega_1, crystal.set_for(crystal.pol.signal));
    const double ki = wavenumber(omega_2, crystal.set_for(crystal.pol.idler));
    return kp - ks - ki;
}

double phase_mismatch(double omega_1, double omega_2, const CrystalSpec& crystal) {
    const double grating = crystal.grating_sign * kTwoPi * crystal.qpm_order / crystal.poling_period_m();
    return phase_mismatch_unpoled(omega_1, omega_2, crystal) - grating;
}

namespace {

// dk along the degenerate diagonal, as a function of the signal/idler
// wavelength in um.
double dk_degenerate(double lambda_um, const CrystalSpec& c) {
    const double omega = omega_from_wavelength_um(lambda_um);
    return phase_mismatch(omega, omega, c);
}

}  // namespace

double degenerate_qpm_wavelength(const CrystalSpec& crystal) {
    crystal.validate();
    // The diagonal needs lambda and lambda/2 both inside the validity windows
    // of every axis involved.
    const SellmeierSet& sp = crystal.set_for(crystal.pol.pump);
    const SellmeierSet& ss = crystal.set_for(crystal.pol.signal);
    const SellmeierSet& si = crystal.set_for(crystal.pol.idler);
    double lo = std::max({2.0 * sp.lambda_min_um, ss.lambda_min_um, si.lambda_min_um});
    double hi = std::min({2.0 * sp.lambda_max_um, ss.lambda_max_um, si.lambda_max_um});
    if (!(hi > lo)) throw DomainError("degenerate QPM search: empty wavelength window");
    // keep the halved pump wavelength strictly inside its own validity window
    lo *= 1.0 + 1e-9;
    hi *= 1.0 - 1e-9;

    // Coarse upward scan.  1 nm resolves the narrow negative dip of a
    // group-velocity-matched design (several nm wide) at negligible cost.
    const double step = 1e-3;  // um
    double a = lo, fa = dk_degenerate(a, crystal);
    double b = 0.0, fb = 0.0;
    bool bracketed = false;
    for (double x = lo + step; x <= hi; x += step) {
        b = std::min(x, hi);
        fb = dk_degenerate(b, crystal);
        if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) return a;
    if (!bracketed)
        throw DomainError("no degenerate QPM point in range: dk(w,w) has no sign change in ["
                          + std::to_string(lo) + ", " + std::to_string(hi) + "] um");

    // Bisection with secant refinement; converge on |dk| itself so the
    // |dk(w*,w*)| < 1e-6 rad/m contract holds even where the curve is flat.
    const double dk_tol = 1e-6;  // rad/m
    double lam = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        double secant = b - fb * (b - a) / (fb - fa);
        lam = (secant > a && secant < b) ? secant : 0.5 * (a + b);
        double f = dk_degenerate(lam, crystal);
        if (std::abs(f) < dk_tol) return lam;
        if ((f < 0.0) == (fa < 0.0)) {
            a = lam;
            fa = f;
        } else {
            b = lam;
            fb = f;
        }
        if (b - a < 1e-15) break;
    }
    std::ostringstream os;
    os << "degenerate QPM root polish failed to reach |dk| < " << dk_tol << " rad/m";
    throw DomainError(os.str());
}

}  // namespace qpm
