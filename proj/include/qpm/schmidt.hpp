#pragma once

#include <cstddef>
#include <vector>

#include "qpm/joint_spectrum.hpp"

namespace qpm {

// Schmidt spectrum of a JSA.  Coefficients are the normalized singular
// values of the amplitude matrix: descending, sum of squares = 1.
struct SchmidtResult {
    std::vector<double> coefficients;  // retained modes only (lambda_n >= 1e-8)
    double purity = 0.0;               // P = sum lambda^4 (over *all* modes)
    double schmidt_number = 0.0;       // K = 1/P
    double indistinguishability = 0.0;  // I = P
    std::size_t retained_modes = 0;
};

// SVD of the uniform-grid amplitude matrix (plain SVD is the correct
// quadrature on a uniform frequency grid).  Modes below 1e-8 are truncated
// from the stored list but still counted in the normalization.
SchmidtResult schmidt_decompose(const JointSpectrum& js);

// I = P, per the identification I = g2 - 1.
double indistinguishability(const JointSpectrum& js);

// Unheralded second-order autocorrelation of one arm: g2 = 1 + P.
double g2_from_jsa(const JointSpectrum& js);

enum class PumpShape { Gaussian, Rectangular };

struct BandwidthPoint {
    double bandwidth_nm;  // pump intensity FWHM (nm, at the pump wavelength)
    double indistinguishability;
};

struct BandwidthScan {
    std::vector<BandwidthPoint> curve;  // the coarse sweep, ascending bandwidth
    double best_bandwidth_nm = 0.0;     // golden-section refined to 1e-3 nm
    double best_indistinguishability = 0.0;
};

struct BandwidthSweepOptions {
    std::size_t coarse_points = 25;  // log-spaced
    bool include_phase = false;
};

// Sweeps the pump bandwidth (intensity FWHM, nm) over [min_bw_nm, max_bw_nm]
// for the given crystal/profile on the given JSA grid, then refines the best
// point by golden section.  The pump is centered on the grid's sum frequency.
BandwidthScan optimize_pump_bandwidth(const CrystalSpec& crystal, const PhaseMatchSpec& pm,
                                      PumpShape shape, double min_bw_nm, double max_bw_nm,
                                      const FreqGrid& grid,
                                      const BandwidthSweepOptions& opts = {});

// Same sweep against a measured |phi| table.
BandwidthScan optimize_pump_bandwidth_tabulated(const TabulatedPhaseMatch& phi, PumpShape shape,
                                                double min_bw_nm, double max_bw_nm,
                                                const FreqGrid& grid,
                                                const BandwidthSweepOptions& opts = {});

// Appendix error model: unwanted signal-idler coincidences (~p Re) versus
// true signal-signal coincidences (~p^2) in a g2 measurement -> Re/p.
// Ratios around 1 make the g2 estimate unreliable.
double coincidence_error_ratio(double pair_probability, double separation_error);

// SFG state-preparation error probability: both inputs leak -> Re^2.
double sfg_error_probability(double separation_error);

}  // namespace qpm
