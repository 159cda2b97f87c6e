#include "qpm/scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpm/error.hpp"
#include "qpm/kernels.hpp"
#include "qpm/parallel.hpp"
#include "qpm/phase_match.hpp"
#include "qpm/rng.hpp"
#include "qpm/units.hpp"

namespace qpm {

void DetectorModel::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
        throw ConfigError("detector: efficiency must be in [0,1]");
    if (!(dark_count_rate >= 0.0)) throw ConfigError("detector: dark count rate must be >= 0");
    if (!(integration_time_s > 0.0)) throw ConfigError("detector: integration time must be > 0");
}

std::size_t WavelengthAxis::count() const {
    if (!(step_nm > 0.0) || !(max_nm >= min_nm)) return 0;
    return static_cast<std::size_t>(std::floor((max_nm - min_nm) / step_nm + 1e-9)) + 1;
}

void WavelengthAxis::validate() const {
    if (!(step_nm > 0.0)) throw ConfigError("scan axis: step must be > 0");
    if (!(max_nm >= min_nm)) throw ConfigError("scan axis: max must be >= min");
    if (count() < 1) throw ConfigError("scan axis: empty");
}

void ScanConfig::validate() const {
    axis1.validate();
    if (!diagonal) axis2.validate();
    if (!(calibration_cps >= 0.0)) throw ConfigError("scan: calibration must be >= 0");
    if (sample && !has_seed) throw ConfigError("scan: sampling requested but no seed given");
}

double ScanResult::peak_expected_rate() const {
    if (expected_rate.empty()) return 0.0;
    return *std::max_element(expected_rate.begin(), expected_rate.end());
}

double sfg_expected_rate(double omega_1, double omega_2, const CrystalSpec& crystal,
                         double calibration_cps, double n1, double n2,
                         const DetectorModel& detector) {
    const double dk = phase_mismatch(omega_1, omega_2, crystal);
    const double x = 0.5 * dk * crystal.length_m();
    const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
    return detector.efficiency * calibration_cps * n1 * n2 * s * s + detector.dark_count_rate;
}

namespace {

void sample_counts(ScanResult& r, const ScanConfig& cfg, const DetectorModel& det) {
    if (!cfg.sample) return;
    r.sampled = true;
    r.seed = cfg.seed;
    r.counts.resize(r.expected_rate.size());
    for (std::size_t k = 0; k < r.counts.size(); ++k)
        r.counts[k] = poisson_sample(r.expected_rate[k] * det.integration_time_s, cfg.seed, k);
}

}  // namespace

ScanResult simulate_sfg_scan(const ScanConfig& config, const CrystalSpec& crystal,
                             const DetectorModel& detector) {
    config.validate();
    detector.validate();
    crystal.validate();
    if (config.diagonal)
        throw ConfigError("simulate_sfg_scan: use simulate_shg_scan for diagonal sweeps");

    ScanResult r;
    r.detector = detector;
    const std::size_t n1 = config.axis1.count(), n2 = config.axis2.count();
    r.axis1_nm.resize(n1);
    r.axis2_nm.resize(n2);
    for (std::size_t i = 0; i < n1; ++i) r.axis1_nm[i] = config.axis1.at(i);
    for (std::size_t j = 0; j < n2; ++j) r.axis2_nm[j] = config.axis2.at(j);

    // Dispersion is separable along the axes; the pump axis needs per-cell
    // evaluation since the wavelength grids are not commensurate in omega.
    std::vector<double> w1(n1), w2(n2), k1(n1), k2(n2), r1(n1), r2(n2);
    for (std::size_t i = 0; i < n1; ++i) {
        w1[i] = omega_from_wavelength_nm(r.axis1_nm[i]);
        k1[i] = wavenumber(w1[i], crystal.set_for(crystal.pol.signal));
        r1[i] = config.n1 ? config.n1(r.axis1_nm[i]) : 1.0;
    }
    for (std::size_t j = 0; j < n2; ++j) {
        w2[j] = omega_from_wavelength_nm(r.axis2_nm[j]);
        k2[j] = wavenumber(w2[j], crystal.set_for(crystal.pol.idler));
        r2[j] = config.n2 ? config.n2(r.axis2_nm[j]) : 1.0;
    }

    const double grating =
        crystal.grating_sign * kTwoPi * crystal.qpm_order / crystal.poling_period_m();
    const double L = crystal.length_m();
    const double dark = detector.dark_count_rate;
    const double scale = detector.efficiency * config.calibration_cps;

    r.expected_rate.assign(n1 * n2, 0.0);
    parallel_for(n1, [&](std::size_t i) {
        std::vector<double> x(n2), s2(n2);
        for (std::size_t j = 0; j < n2; ++j) {
            const double kp = wavenumber(w1[i] + w2[j], crystal.set_for(crystal.pol.pump));
            x[j] = 0.5 * L * (kp - k1[i] - k2[j] - grating);
        }
        kernels::sinc_mag2(x.data(), s2.data(), n2);
        double* row = r.expected_rate.data() + i * n2;
        for (std::size_t j = 0; j < n2; ++j) row[j] = scale * r1[i] * r2[j] * s2[j] + dark;
    });

    sample_counts(r, config, detector);
    return r;
}

ScanResult simulate_shg_scan(const ScanConfig& config, const std::vector<ShgProcess>& processes,
                             const DetectorModel& detector) {
    config.validate();
    detector.validate();
    if (!config.diagonal) throw ConfigError("simulate_shg_scan: config must be in diagonal mode");

    ScanResult r;
    r.detector = detector;
    const std::size_t n = config.axis1.count();
    r.axis1_nm.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.axis1_nm[i] = config.axis1.at(i);

    // Check every process matches somewhere in or near the sweep.
    const double span = config.axis1.max_nm - config.axis1.min_nm;
    for (const auto& p : processes) {
        p.crystal.validate();
        try {
            const double deg_nm = degenerate_qpm_wavelength(p.crystal) * 1e3;
            if (deg_nm < config.axis1.min_nm - span || deg_nm > config.axis1.max_nm + span) {
                std::ostringstream os;
                os << "process '" << p.name << "': degenerate QPM point at " << deg_nm
                   << " nm is far outside the sweep range";
                r.warnings.push_back(os.str());
            }
        } catch (const DomainError&) {
            r.warnings.push_back("process '" + p.name +
                                 "': no degenerate QPM point inside the Sellmeier range");
        } catch (const RangeError&) {
            r.warnings.push_back("process '" + p.name +
                                 "': degenerate QPM check left the Sellmeier range");
        }
    }

    const double dark = detector.dark_count_rate;
    const double scale = detector.efficiency * config.calibration_cps;

    r.expected_rate.assign(n, dark);
    for (const auto& p : processes) {
        const double weight =
            p.relative_amplitude * qpm_fourier_coefficient(p.crystal.qpm_order, p.crystal.duty);
        const double grating = p.crystal.grating_sign * kTwoPi * p.crystal.qpm_order /
                               p.crystal.poling_period_m();
        const double L = p.crystal.length_m();
        std::vector<double> x(n), s2(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = omega_from_wavelength_nm(r.axis1_nm[i]);
            const double kp = wavenumber(2.0 * w, p.crystal.set_for(p.crystal.pol.pump));
            const double k1 = wavenumber(w, p.crystal.set_for(p.crystal.pol.signal));
            const double k2 = wavenumber(w, p.crystal.set_for(p.crystal.pol.idler));
            x[i] = 0.5 * L * (kp - k1 - k2 - grating);
        }
        kernels::sinc_mag2(x.data(), s2.data(), n);
        std::vector<double> comp(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double in1 = config.n1 ? config.n1(r.axis1_nm[i]) : 1.0;
            const double in2 = config.n2 ? config.n2(r.axis1_nm[i]) : 1.0;
            comp[i] = scale * in1 * in2 * weight * weight * s2[i];
            r.expected_rate[i] += comp[i];
        }
        r.component_names.push_back(p.name);
        r.components.push_back(std::move(comp));
    }

    sample_counts(r, config, detector);
    return r;
}

double snr(const ScanResult& result) {
    const double dark = result.detector.dark_count_rate;
    if (!(dark > 0.0)) throw DomainError("SNR undefined: dark count rate is zero");
    const double peak = result.peak_expected_rate() - dark;
    if (!(peak > 0.0)) throw DomainError("SNR undefined: no signal above the dark floor");
    return 10.0 * std::log10(peak / dark);
}

}  // namespace qpm
