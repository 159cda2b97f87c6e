#include "qpm/phase_match.hpp"

#include <algorithm>
#include <cmath>

#include "qpm/error.hpp"
#include "qpm/rng.hpp"
#include "qpm/units.hpp"

namespace qpm {

namespace {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

void validate(const PhaseMatchSpec& spec) {
    if (const auto* u = std::get_if<UniformProfile>(&spec)) {
        if (!(u->length_m > 0.0)) throw ConfigError("uniform phase-match profile: L must be > 0");
        return;
    }
    const auto& d = std::get<DomainProfile>(spec);
    if (d.boundaries_m.size() < 2)
        throw ConfigError("domain phase-match profile: need >= 2 boundaries");
    if (d.boundaries_m.front() != 0.0)
        throw ConfigError("domain phase-match profile: first boundary must be 0");
    for (std::size_t j = 1; j < d.boundaries_m.size(); ++j)
        if (!(d.boundaries_m[j] > d.boundaries_m[j - 1]))
            throw ConfigError("domain phase-match profile: boundaries must be strictly increasing");
    if (d.start_sign != 1 && d.start_sign != -1)
        throw ConfigError("domain phase-match profile: start sign must be +1 or -1");
}

std::complex<double> pm_amplitude_uniform(double delta_k, double length_m, bool include_phase) {
    const double x = 0.5 * delta_k * length_m;
    const double s = sinc(x);
    if (!include_phase) return {s, 0.0};
    return std::polar(1.0, x) * s;
}

std::complex<double> pm_amplitude_domains(double delta_k, const DomainProfile& spec) {
    validate(PhaseMatchSpec{spec});
    const double total = spec.total_length();
    std::complex<double> acc{0.0, 0.0};
    double sign = spec.start_sign;
    for (std::size_t j = 0; j + 1 < spec.boundaries_m.size(); ++j) {
        const double z0 = spec.boundaries_m[j];
        const double z1 = spec.boundaries_m[j + 1];
        const double w = z1 - z0;
        const double zbar = 0.5 * (z0 + z1);
        // Int_{z0}^{z1} e^{i dk z} dz = w sinc(dk w/2) e^{i dk zbar}
        acc += sign * w * sinc(0.5 * delta_k * w) * std::polar(1.0, delta_k * zbar);
        sign = -sign;
    }
    return acc / total;
}

double qpm_fourier_coefficient(int m, double duty) {
    if (m < 1) throw ConfigError("QPM order must be >= 1");
    if (!(duty > 0.0 && duty < 1.0)) throw ConfigError("duty cycle must be in (0,1)");
    // sin(m pi d) vanishes identically when m d is an integer (even orders at
    // 50% duty); return the exact zero rather than sin's rounding residue.
    const double md = m * duty;
    if (md == std::floor(md)) return 0.0;
    return 2.0 / (m * kPi) * std::abs(std::sin(m * kPi * duty));
}

DomainProfile make_grating(double period_m, double duty, std::size_t n_periods, int start_sign) {
    if (!(period_m > 0.0)) throw ConfigError("grating period must be > 0");
    if (!(duty > 0.0 && duty < 1.0)) throw ConfigError("duty cycle must be in (0,1)");
    if (n_periods == 0) throw ConfigError("grating needs >= 1 period");
    DomainProfile d;
    d.start_sign = start_sign;
    d.boundaries_m.reserve(2 * n_periods + 1);
    d.boundaries_m.push_back(0.0);
    for (std::size_t p = 0; p < n_periods; ++p) {
        d.boundaries_m.push_back((p + duty) * period_m);
        d.boundaries_m.push_back((p + 1.0) * period_m);
    }
    return d;
}

DomainProfile make_jittered_grating(double period_m, double duty, std::size_t n_periods,
                                    double sigma_frac, std::uint64_t seed) {
    DomainProfile d = make_grating(period_m, duty, n_periods, +1);
    if (sigma_frac > 0.0) {
        const double sigma = sigma_frac * period_m;
        // Interior walls only; keep the sequence strictly increasing.
        for (std::size_t j = 1; j + 1 < d.boundaries_m.size(); ++j) {
            double shifted = d.boundaries_m[j] + sigma * keyed_normal(seed, j, 0);
            double lo = d.boundaries_m[j - 1] + 1e-3 * period_m;
            d.boundaries_m[j] = std::max(shifted, lo);
        }
        for (std::size_t j = 1; j < d.boundaries_m.size(); ++j)
            if (d.boundaries_m[j] <= d.boundaries_m[j - 1])
                d.boundaries_m[j] = d.boundaries_m[j - 1] + 1e-3 * period_m;
    }
    return d;
}

double TabulatedPhaseMatch::eval(double ws, double wi) const {
    if (omega_s.size() < 2 || omega_i.size() < 2) throw ConfigError("tabulated |phi|: empty grid");
    if (ws < omega_s.front() || ws > omega_s.back() || wi < omega_i.front() || wi > omega_i.back())
        return 0.0;
    auto cell = [](const std::vector<double>& ax, double w) {
        auto it = std::upper_bound(ax.begin(), ax.end(), w);
        std::size_t hi = static_cast<std::size_t>(it - ax.begin());
        if (hi == 0) hi = 1;
        if (hi == ax.size()) hi = ax.size() - 1;
        std::size_t lo = hi - 1;
        double t = (w - ax[lo]) / (ax[hi] - ax[lo]);
        return std::pair<std::size_t, double>{lo, t};
    };
    auto [is, ts] = cell(omega_s, ws);
    auto [ii, ti] = cell(omega_i, wi);
    const std::size_t ni = omega_i.size();
    const double v00 = amplitude[is * ni + ii];
    const double v01 = amplitude[is * ni + ii + 1];
    const double v10 = amplitude[(is + 1) * ni + ii];
    const double v11 = amplitude[(is + 1) * ni + ii + 1];
    return (1 - ts) * ((1 - ti) * v00 + ti * v01) + ts * ((1 - ti) * v10 + ti * v11);
}

TabulatedPhaseMatch TabulatedPhaseMatch::from_intensity(std::vector<double> ws,
                                                        std::vector<double> wi,
                                                        const std::vector<double>& intensity) {
    if (intensity.size() != ws.size() * wi.size())
        throw ConfigError("tabulated |phi|: intensity size does not match axes");
    TabulatedPhaseMatch t;
    t.amplitude.resize(intensity.size());
    for (std::size_t k = 0; k < intensity.size(); ++k) {
        if (!(intensity[k] >= 0.0))
            throw ConfigError("tabulated |phi|: intensities must be >= 0");
        t.amplitude[k] = std::sqrt(intensity[k]);
    }
    t.omega_s = std::move(ws);
    t.omega_i = std::move(wi);
    t.sqrt_of_intensity = true;
    return t;
}

}  // namespace qpm
