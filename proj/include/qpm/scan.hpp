#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qpm/dispersion.hpp"

namespace qpm {

struct DetectorModel {
    double efficiency = 1.0;          // multiplies the signal term
    double dark_count_rate = 100.0;   // counts/s
    double integration_time_s = 1.0;  // per grid point

    void validate() const;  // efficiency in [0,1], dark >= 0, time > 0
};

struct WavelengthAxis {
    double min_nm = 0.0;
    double max_nm = 0.0;
    double step_nm = 0.0;

    std::size_t count() const;
    double at(std::size_t k) const { return min_nm + step_nm * static_cast<double>(k); }
    void validate() const;
};

// Relative input photon rate versus wavelength (nm); nullptr means 1.
using RateFunction = std::function<double(double)>;

struct ScanConfig {
    WavelengthAxis axis1;  // omega_1 (signal input)
    WavelengthAxis axis2;  // omega_2 (idler input); unused in diagonal mode
    bool diagonal = false;  // SHG mode: omega_2 = omega_1, 1-D sweep
    double calibration_cps = 1e6;  // counts/s at N1 = N2 = |phi|^2 = 1
    RateFunction n1;
    RateFunction n2;
    bool sample = true;
    bool has_seed = false;
    std::uint64_t seed = 0;

    void validate() const;  // steps > 0; seed present when sampling
};

struct ScanResult {
    std::vector<double> axis1_nm;
    std::vector<double> axis2_nm;  // empty for 1-D results
    // Row-major [axis1][axis2] for 2-D, flat for 1-D.  Includes dark counts.
    std::vector<double> expected_rate;
    std::vector<std::uint64_t> counts;  // empty when not sampled
    // SHG per-process signal components (no dark term), same layout.
    std::vector<std::string> component_names;
    std::vector<std::vector<double>> components;
    std::vector<std::string> warnings;
    DetectorModel detector;
    bool sampled = false;
    std::uint64_t seed = 0;

    double peak_expected_rate() const;
};

// eta * calibration * N1 * N2 * |phi(dk(w1,w2))|^2 + dark, counts/s.
// The phase-matching amplitude is the uniform sinc for the crystal length.
double sfg_expected_rate(double omega_1, double omega_2, const CrystalSpec& crystal,
                         double calibration_cps, double n1, double n2,
                         const DetectorModel& detector = DetectorModel{1.0, 0.0, 1.0});

// Frequency-resolved SFG scan over the 2-D wavelength grid; counts are
// Poisson(rate * integration time) with the per-point keyed generator.
ScanResult simulate_sfg_scan(const ScanConfig& config, const CrystalSpec& crystal,
                             const DetectorModel& detector);

// One QPM process participating in a composite (e.g. diagonally polarized)
// SHG sweep; intensity weight is (relative_amplitude * G_m(duty))^2.
struct ShgProcess {
    std::string name;
    CrystalSpec crystal;
    double relative_amplitude = 1.0;
};

// Diagonal sweep (omega_1 = omega_2).  Total expected rate is the sum of the
// per-process components plus dark; components are returned for
// polarization-resolved analysis.
ScanResult simulate_shg_scan(const ScanConfig& config, const std::vector<ShgProcess>& processes,
                             const DetectorModel& detector);

// 10 log10(peak-above-dark / dark), dB.
double snr(const ScanResult& result);

}  // namespace qpm
