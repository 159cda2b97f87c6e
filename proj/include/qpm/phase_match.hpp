#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace qpm {

// Nonlinearity profile along the propagation direction.
//
// uniform:  constant nonlinearity over length L; phi(dk) = sinc(dk L/2),
//           optionally times exp(i dk L/2).
// domains:  explicit sign-alternating domain walls z0=0 < z1 < ... < zN;
//           models poling-period fluctuations and duty-cycle errors.
struct UniformProfile {
    double length_m = 0.0;
};

struct DomainProfile {
    std::vector<double> boundaries_m;  // z0 = 0, strictly increasing
    int start_sign = +1;

    double total_length() const { return boundaries_m.empty() ? 0.0 : boundaries_m.back(); }
};

using PhaseMatchSpec = std::variant<UniformProfile, DomainProfile>;

void validate(const PhaseMatchSpec& spec);  // throws ConfigError

// sinc(dk L/2); with include_phase also the exp(i dk L/2) factor.
// |phi| <= 1, phi(0) = 1, first zeros at dk = +-2 pi / L.
std::complex<double> pm_amplitude_uniform(double delta_k, double length_m, bool include_phase);

// phi(dk) = (1/L) sum_j s_j Int_{z_j}^{z_{j+1}} e^{i dk z} dz
//         = (1/L) sum_j s_j w_j sinc(dk w_j / 2) e^{i dk zbar_j},
// which is exact for every dk including 0.  delta_k here is the *unpoled*
// mismatch: the domain structure itself supplies the grating.
std::complex<double> pm_amplitude_domains(double delta_k, const DomainProfile& spec);

// Relative effective nonlinearity of QPM order m at duty cycle d:
// G_m(d) = 2/(m pi) |sin(m pi d)|.  Even orders vanish at d = 1/2.
double qpm_fourier_coefficient(int m, double duty);

// Ideal grating: n_periods of (duty * period positive, rest negative).
DomainProfile make_grating(double period_m, double duty, std::size_t n_periods,
                           int start_sign = +1);

// Grating with period-boundary jitter (Gaussian, sigma_frac of the period),
// deterministic in the seed.  Duty errors and wall displacement both arise.
DomainProfile make_jittered_grating(double period_m, double duty, std::size_t n_periods,
                                    double sigma_frac, std::uint64_t seed);

// Measured |phi(omega_s, omega_i)| on a rectangular frequency grid, e.g.
// imported from an SFG scan: amplitude = sqrt(intensity), zero phase.
// Bilinear interpolation inside the grid, 0 outside.
struct TabulatedPhaseMatch {
    std::vector<double> omega_s;  // strictly increasing, rad/s
    std::vector<double> omega_i;
    std::vector<double> amplitude;  // row-major [s][i], >= 0
    bool sqrt_of_intensity = false;  // provenance: amplitudes came from sqrt(I)

    double eval(double ws, double wi) const;

    static TabulatedPhaseMatch from_intensity(std::vector<double> omega_s,
                                              std::vector<double> omega_i,
                                              const std::vector<double>& intensity);
};

}  // namespace qpm
