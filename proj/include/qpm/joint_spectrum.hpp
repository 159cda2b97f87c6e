#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qpm/dispersion.hpp"
#include "qpm/phase_match.hpp"
#include "qpm/pump.hpp"

namespace qpm {

// Uniform signal x idler detuning grid around the photon central frequencies.
struct FreqGrid {
    double omega_s0 = 0.0;  // rad/s
    double omega_i0 = 0.0;
    double span_s = 0.0;  // full width of the detuning axis, rad/s
    double span_i = 0.0;
    std::size_t n_s = 0;
    std::size_t n_i = 0;

    // Square grid centered on the degenerate point lambda0 (um), spans given
    // in nm of signal/idler wavelength.
    static FreqGrid centered_um(double lambda0_um, double span_nm, std::size_t n);

    void validate() const;
};

// Complex joint spectral amplitude f(omega_s, omega_i) on the grid.
// Stored as separate re/im planes, row-major [i_s][i_i]; im is empty while
// the amplitude is purely real (real sinc, real pump).
struct JointSpectrum {
    std::vector<double> omega_s;  // detunings Omega_s = omega_s - omega_s0
    std::vector<double> omega_i;
    double omega_s0 = 0.0;
    double omega_i0 = 0.0;
    std::vector<double> re;
    std::vector<double> im;  // empty <=> real amplitude
    bool normalized = false;
    bool include_phase = false;

    std::size_t rows() const { return omega_s.size(); }
    std::size_t cols() const { return omega_i.size(); }
    bool is_real() const { return im.empty(); }
    std::complex<double> at(std::size_t i, std::size_t j) const {
        const std::size_t k = i * cols() + j;
        return {re[k], im.empty() ? 0.0 : im[k]};
    }
    double cell_area() const;

    // Checks axis monotonicity/uniformity (1e-12 relative), matrix shape and,
    // when flagged, L2 normalization (1e-10).  Throws DomainError.
    void validate() const;

    // Scale so that sum |f|^2 dOmega_s dOmega_i = 1.
    void normalize();
};

struct BuildOptions {
    bool include_phase = false;  // exp(i dk L/2) factor on the uniform sinc
    bool normalize = false;
};

// f[i][j] = alpha(w_s,i + w_i,j) * phi(dk(w_s,i, w_i,j)) per the QPM crystal
// dispersion and the chosen nonlinearity profile.
JointSpectrum build_jsa(const PumpEnvelope& pump, const CrystalSpec& crystal,
                        const PhaseMatchSpec& pm, const FreqGrid& grid,
                        const BuildOptions& opts = {});

// Same product with a measured |phi| table (zero phase) instead of a
// dispersion model.
JointSpectrum build_jsa_tabulated(const PumpEnvelope& pump, const TabulatedPhaseMatch& phi,
                                  const FreqGrid& grid, bool normalize = false);

// |f|^2, row-major.
std::vector<double> jsi(const JointSpectrum& js);

// Relative SPDC pair rate: N_p(w_s + w_i) * |f|^2 elementwise.
std::vector<double> spdc_rate(const JointSpectrum& js,
                              const std::function<double(double)>& pump_photon_rate);

}  // namespace qpm
