#include "qpm/pump.hpp"

#include <algorithm>
#include <cmath>

#include "qpm/error.hpp"
#include "qpm/kernels.hpp"

namespace qpm {

PumpEnvelope PumpEnvelope::gaussian(double omega_p0, double sigma_p) {
    if (!(sigma_p > 0.0)) throw ConfigError("gaussian pump: sigma must be > 0");
    PumpEnvelope p;
    p.shape_ = Shape::Gaussian;
    p.omega_p0_ = omega_p0;
    p.sigma_ = sigma_p;
    return p;
}

PumpEnvelope PumpEnvelope::rectangular(double omega_p0, double full_width) {
    if (!(full_width > 0.0)) throw ConfigError("rectangular pump: width must be > 0");
    PumpEnvelope p;
    p.shape_ = Shape::Rectangular;
    p.omega_p0_ = omega_p0;
    p.width_ = full_width;
    return p;
}

PumpEnvelope PumpEnvelope::tabulated(std::vector<double> omegas, std::vector<double> amplitudes) {
    if (omegas.size() != amplitudes.size() || omegas.size() < 2)
        throw ConfigError("tabulated pump: need >= 2 matching (frequency, amplitude) samples");
    double peak = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (i > 0 && !(omegas[i] > omegas[i - 1]))
            throw ConfigError("tabulated pump: frequencies must be strictly increasing");
        if (!(amplitudes[i] >= 0.0))
            throw ConfigError("tabulated pump: amplitudes must be non-negative");
        peak = std::max(peak, amplitudes[i]);
    }
    if (!(peak > 0.0)) throw ConfigError("tabulated pump: all amplitudes are zero");
    for (double& a : amplitudes) a /= peak;
    PumpEnvelope p;
    p.shape_ = Shape::Tabulated;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        if (amplitudes[i] > amplitudes[imax]) imax = i;
    p.omega_p0_ = omegas[imax];
    p.tab_omega_ = std::move(omegas);
    p.tab_amp_ = std::move(amplitudes);
    return p;
}

double PumpEnvelope::amplitude(double w) const {
    switch (shape_) {
        case Shape::Gaussian: {
            double t = (w - omega_p0_) / sigma_;
            return std::exp(-t * t);
        }
        case Shape::Rectangular:
            return std::abs(w - omega_p0_) <= 0.5 * width_ ? 1.0 : 0.0;
        case Shape::Tabulated: {
            if (w < tab_omega_.front() || w > tab_omega_.back()) return 0.0;
            auto it = std::upper_bound(tab_omega_.begin(), tab_omega_.end(), w);
            if (it == tab_omega_.begin()) return tab_amp_.front();
            std::size_t hi = static_cast<std::size_t>(it - tab_omega_.begin());
            if (hi == tab_omega_.size()) return tab_amp_.back();
            std::size_t lo = hi - 1;
            double t = (w - tab_omega_[lo]) / (tab_omega_[hi] - tab_omega_[lo]);
            return tab_amp_[lo] + t * (tab_amp_[hi] - tab_amp_[lo]);
        }
    }
    return 0.0;
}

void PumpEnvelope::amplitudes(const double* omega_sum, double* out, std::size_t n) const {
    if (shape_ == Shape::Gaussian) {
        // t = (w - w0)/sigma, then the exp(-t^2) kernel.
        const double inv = 1.0 / sigma_;
        for (std::size_t i = 0; i < n; ++i) out[i] = (omega_sum[i] - omega_p0_) * inv;
        kernels::exp_neg_sq(out, out, n);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = amplitude(omega_sum[i]);
}

double pump_amplitude(const PumpEnvelope& envelope, double omega_sum) {
    return envelope.amplitude(omega_sum);
}

}  // namespace qpm
