#include "qpm/joint_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "qpm/error.hpp"
#include "qpm/kernels.hpp"
#include "qpm/parallel.hpp"
#include "qpm/units.hpp"

namespace qpm {

FreqGrid FreqGrid::centered_um(double lambda0_um, double span_nm, std::size_t n) {
    FreqGrid g;
    g.omega_s0 = omega_from_wavelength_um(lambda0_um);
    g.omega_i0 = g.omega_s0;
    const double dw = omega_per_nm_at(lambda0_um * 1e3) * span_nm;
    g.span_s = dw;
    g.span_i = dw;
    g.n_s = n;
    g.n_i = n;
    return g;
}

void FreqGrid::validate() const {
    if (n_s < 2 || n_i < 2) throw ConfigError("frequency grid needs >= 2 points per axis");
    if (!(span_s > 0.0) || !(span_i > 0.0)) throw ConfigError("frequency grid spans must be > 0");
    if (!(omega_s0 > 0.0) || !(omega_i0 > 0.0))
        throw ConfigError("frequency grid centers must be positive");
}

namespace {

std::vector<double> linspace_centered(double span, std::size_t n) {
    std::vector<double> v(n);
    const double step = span / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = -0.5 * span + step * static_cast<double>(k);
    return v;
}

void check_axis_uniform(const std::vector<double>& ax, const char* name) {
    if (ax.size() < 2) throw DomainError(std::string(name) + ": axis too short");
    const double step = ax[1] - ax[0];
    if (!(step > 0.0)) throw DomainError(std::string(name) + ": axis not increasing");
    // uniformity to 1e-12 of the axis span
    const double tol = 1e-12 * (ax.back() - ax.front());
    for (std::size_t k = 1; k < ax.size(); ++k) {
        const double d = ax[k] - ax[k - 1];
        if (!(d > 0.0)) throw DomainError(std::string(name) + ": axis not increasing");
        if (std::abs(d - step) > tol)
            throw DomainError(std::string(name) + ": axis spacing non-uniform");
    }
}

double kahan_sum_mag2(const std::vector<double>& re, const std::vector<double>& im) {
    double sum = 0.0, c = 0.0;
    for (std::size_t k = 0; k < re.size(); ++k) {
        double v = re[k] * re[k];
        if (!im.empty()) v += im[k] * im[k];
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

double JointSpectrum::cell_area() const {
    return (omega_s[1] - omega_s[0]) * (omega_i[1] - omega_i[0]);
}

void JointSpectrum::validate() const {
    check_axis_uniform(omega_s, "joint spectrum signal");
    check_axis_uniform(omega_i, "joint spectrum idler");
    if (re.size() != rows() * cols())
        throw DomainError("joint spectrum: matrix size does not match axes");
    if (!im.empty() && im.size() != re.size())
        throw DomainError("joint spectrum: re/im plane size mismatch");
    if (normalized) {
        const double s = kahan_sum_mag2(re, im) * cell_area();
        if (std::abs(s - 1.0) > 1e-10)
            throw DomainError("joint spectrum: normalization flag set but L2 norm is off");
    }
}

void JointSpectrum::normalize() {
    const double s = kahan_sum_mag2(re, im) * cell_area();
    if (!(s > 0.0)) throw DomainError("joint spectrum: cannot normalize a zero amplitude");
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : re) v *= inv;
    for (double& v : im) v *= inv;
    normalized = true;
}

JointSpectrum build_jsa(const PumpEnvelope& pump, const CrystalSpec& crystal,
                        const PhaseMatchSpec& pm, const FreqGrid& grid,
                        const BuildOptions& opts) {
    grid.validate();
    crystal.validate();
    qpm::validate(pm);

    JointSpectrum js;
    js.omega_s0 = grid.omega_s0;
    js.omega_i0 = grid.omega_i0;
    js.omega_s = linspace_centered(grid.span_s, grid.n_s);
    js.omega_i = linspace_centered(grid.span_i, grid.n_i);
    js.include_phase = opts.include_phase;

    const std::size_t ns = grid.n_s, ni = grid.n_i;
    const bool uniform_pm = std::holds_alternative<UniformProfile>(pm);
    const bool complex_out = opts.include_phase || !uniform_pm;
    js.re.assign(ns * ni, 0.0);
    if (complex_out) js.im.assign(ns * ni, 0.0);

    // 1-D dispersion precomputes; range errors surface here, per axis value.
    std::vector<double> ks(ns), ki(ni);
    for (std::size_t i = 0; i < ns; ++i)
        ks[i] = wavenumber(grid.omega_s0 + js.omega_s[i], crystal.set_for(crystal.pol.signal));
    for (std::size_t j = 0; j < ni; ++j)
        ki[j] = wavenumber(grid.omega_i0 + js.omega_i[j], crystal.set_for(crystal.pol.idler));

    // On an equal-spacing grid, omega_s,i + omega_i,j takes only ns+ni-1
    // distinct values along anti-diagonals; the pump axis dispersion and the
    // pump envelope collapse onto that axis.
    const double step_s = js.omega_s[1] - js.omega_s[0];
    const double step_i = js.omega_i[1] - js.omega_i[0];
    const bool shared_diag = std::abs(step_s - step_i) <= 1e-12 * std::abs(step_s);

    const double grating =
        crystal.grating_sign * kTwoPi * crystal.qpm_order / crystal.poling_period_m();
    const double w00 = grid.omega_s0 + grid.omega_i0 + js.omega_s[0] + js.omega_i[0];

    std::vector<double> kp_diag, alpha_diag;
    if (shared_diag) {
        const std::size_t nd = ns + ni - 1;
        kp_diag.resize(nd);
        alpha_diag.resize(nd);
        std::vector<double> wsum(nd);
        for (std::size_t d = 0; d < nd; ++d) wsum[d] = w00 + static_cast<double>(d) * step_s;
        for (std::size_t d = 0; d < nd; ++d)
            kp_diag[d] = wavenumber(wsum[d], crystal.set_for(crystal.pol.pump));
        pump.amplitudes(wsum.data(), alpha_diag.data(), nd);
    }

    parallel_for(ns, [&](std::size_t i) {
        std::vector<double> x(ni), phi_re(ni), phi_im;
        if (complex_out) phi_im.resize(ni);
        if (uniform_pm) {
            const double Lu = std::get<UniformProfile>(pm).length_m;
            for (std::size_t j = 0; j < ni; ++j) {
                const double kp = shared_diag
                                      ? kp_diag[i + j]
                                      : wavenumber(grid.omega_s0 + js.omega_s[i] +
                                                       grid.omega_i0 + js.omega_i[j],
                                                   crystal.set_for(crystal.pol.pump));
                x[j] = 0.5 * Lu * (kp - ks[i] - ki[j] - grating);
            }
            if (opts.include_phase)
                kernels::sinc_phase(x.data(), phi_re.data(), phi_im.data(), ni);
            else
                kernels::sinc(x.data(), phi_re.data(), ni);
        } else {
            const auto& dom = std::get<DomainProfile>(pm);
            for (std::size_t j = 0; j < ni; ++j) {
                const double kp = shared_diag
                                      ? kp_diag[i + j]
                                      : wavenumber(grid.omega_s0 + js.omega_s[i] +
                                                       grid.omega_i0 + js.omega_i[j],
                                                   crystal.set_for(crystal.pol.pump));
                // Domain walls supply the grating; feed the unpoled mismatch.
                std::complex<double> p = pm_amplitude_domains(kp - ks[i] - ki[j], dom);
                phi_re[j] = p.real();
                phi_im[j] = p.imag();
            }
        }
        double* row_re = js.re.data() + i * ni;
        double* row_im = complex_out ? js.im.data() + i * ni : nullptr;
        for (std::size_t j = 0; j < ni; ++j) {
            double a;
            if (shared_diag) {
                a = alpha_diag[i + j];
            } else {
                a = pump.amplitude(grid.omega_s0 + js.omega_s[i] + grid.omega_i0 + js.omega_i[j]);
            }
            row_re[j] = a * phi_re[j];
            if (row_im) row_im[j] = a * phi_im[j];
        }
    });

    if (opts.normalize) js.normalize();
    return js;
}

JointSpectrum build_jsa_tabulated(const PumpEnvelope& pump, const TabulatedPhaseMatch& phi,
                                  const FreqGrid& grid, bool normalize) {
    grid.validate();
    JointSpectrum js;
    js.omega_s0 = grid.omega_s0;
    js.omega_i0 = grid.omega_i0;
    js.omega_s = linspace_centered(grid.span_s, grid.n_s);
    js.omega_i = linspace_centered(grid.span_i, grid.n_i);
    js.re.assign(grid.n_s * grid.n_i, 0.0);
    const std::size_t ni = grid.n_i;
    parallel_for(grid.n_s, [&](std::size_t i) {
        const double ws = grid.omega_s0 + js.omega_s[i];
        for (std::size_t j = 0; j < ni; ++j) {
            const double wi = grid.omega_i0 + js.omega_i[j];
            js.re[i * ni + j] = pump.amplitude(ws + wi) * phi.eval(ws, wi);
        }
    });
    if (normalize) js.normalize();
    return js;
}

std::vector<double> jsi(const JointSpectrum& js) {
    std::vector<double> out(js.re.size());
    if (js.is_real()) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = js.re[k] * js.re[k];
    } else {
        kernels::mag2(js.re.data(), js.im.data(), out.data(), out.size());
    }
    return out;
}

std::vector<double> spdc_rate(const JointSpectrum& js,
                              const std::function<double(double)>& pump_photon_rate) {
    std::vector<double> out = jsi(js);
    const std::size_t ni = js.cols();
    for (std::size_t i = 0; i < js.rows(); ++i)
        for (std::size_t j = 0; j < ni; ++j)
            out[i * ni + j] *=
                pump_photon_rate(js.omega_s0 + js.omega_s[i] + js.omega_i0 + js.omega_i[j]);
    return out;
}

}  // namespace qpm
