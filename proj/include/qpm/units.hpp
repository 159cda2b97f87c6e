#pragma once

#include <cmath>

// Unit conventions used throughout the library:
//   - angular frequencies in rad/s,
//   - wavenumbers in rad/m, inverse group velocities in s/m,
//   - vacuum wavelengths cross the API boundary in um (Sellmeier inputs,
//     crystal geometry) or nm (scan axes, CLI); everything internal is SI.

namespace qpm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double omega_from_wavelength_um(double lambda_um) {
    return kTwoPi * kSpeedOfLight / (lambda_um * 1e-6);
}

inline double wavelength_um_from_omega(double omega) {
    return kTwoPi * kSpeedOfLight / omega * 1e6;
}

inline double omega_from_wavelength_nm(double lambda_nm) {
    return kTwoPi * kSpeedOfLight / (lambda_nm * 1e-9);
}

inline double wavelength_nm_from_omega(double omega) {
    return kTwoPi * kSpeedOfLight / omega * 1e9;
}

// |d omega / d lambda| at a given wavelength, in rad/s per nm.
inline double omega_per_nm_at(double lambda_nm) {
    double lm = lambda_nm * 1e-9;
    return kTwoPi * kSpeedOfLight / (lm * lm) * 1e-9;
}

}  // namespace qpm
