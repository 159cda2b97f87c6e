#include "qpm/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qpm/error.hpp"
#include "qpm/parallel.hpp"
#include "qpm/units.hpp"

namespace qpm {

namespace {

std::vector<double> singular_values(const JointSpectrum& js) {
    using RowMajorD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto rows = static_cast<Eigen::Index>(js.rows());
    const auto cols = static_cast<Eigen::Index>(js.cols());
    Eigen::VectorXd sv;
    if (js.is_real()) {
        Eigen::Map<const RowMajorD> m(js.re.data(), rows, cols);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
        sv = svd.singularValues();
    } else {
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = js.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        sv = svd.singularValues();
    }
    return {sv.data(), sv.data() + sv.size()};
}

SchmidtResult decompose_values(std::vector<double> sv) {
    double sum2 = 0.0;
    for (double s : sv) sum2 += s * s;
    if (!(sum2 > 0.0)) throw DomainError("Schmidt decomposition of an all-zero amplitude");
    const double inv = 1.0 / std::sqrt(sum2);
    double purity = 0.0;
    SchmidtResult r;
    for (double s : sv) {
        const double lam = s * inv;
        purity += lam * lam * lam * lam;
        if (lam >= 1e-8) r.coefficients.push_back(lam);
    }
    std::sort(r.coefficients.begin(), r.coefficients.end(), std::greater<double>());
    r.purity = purity;
    r.schmidt_number = 1.0 / purity;
    r.indistinguishability = purity;
    r.retained_modes = r.coefficients.size();
    return r;
}

}  // namespace

SchmidtResult schmidt_decompose(const JointSpectrum& js) {
    js.validate();
    return decompose_values(singular_values(js));
}

double indistinguishability(const JointSpectrum& js) { return schmidt_decompose(js).purity; }

double g2_from_jsa(const JointSpectrum& js) { return 1.0 + schmidt_decompose(js).purity; }

namespace {

// Pump bandwidth quoted as intensity FWHM in nm at the pump wavelength.
// Gaussian amplitude exp(-x^2/sigma^2) has intensity FWHM 2 sigma sqrt(ln2/2).
PumpEnvelope make_pump(PumpShape shape, double bw_nm, double omega_p0) {
    const double lam_p_nm = wavelength_nm_from_omega(omega_p0);
    const double dw = omega_per_nm_at(lam_p_nm) * bw_nm;
    if (shape == PumpShape::Gaussian)
        return PumpEnvelope::gaussian(omega_p0, dw / (2.0 * std::sqrt(0.5 * std::log(2.0))));
    return PumpEnvelope::rectangular(omega_p0, dw);
}

BandwidthScan sweep_bandwidth(const std::function<double(double)>& indist_at, double min_bw_nm,
                              double max_bw_nm, std::size_t coarse_points) {
    if (!(min_bw_nm > 0.0) || !(max_bw_nm >= min_bw_nm))
        throw ConfigError("pump bandwidth range must satisfy 0 < min <= max");

    BandwidthScan scan;
    if (min_bw_nm == max_bw_nm) {
        const double I = indist_at(min_bw_nm);
        scan.curve.push_back({min_bw_nm, I});
        scan.best_bandwidth_nm = min_bw_nm;
        scan.best_indistinguishability = I;
        return scan;
    }
    if (coarse_points < 8) throw ConfigError("bandwidth sweep needs >= 8 coarse points");

    std::vector<double> bw(coarse_points);
    const double lr = std::log(max_bw_nm / min_bw_nm);
    for (std::size_t k = 0; k < coarse_points; ++k)
        bw[k] = min_bw_nm * std::exp(lr * static_cast<double>(k) /
                                     static_cast<double>(coarse_points - 1));

    scan.curve.resize(coarse_points);
    parallel_for(coarse_points, [&](std::size_t k) {
        scan.curve[k] = {bw[k], indist_at(bw[k])};
    });

    std::size_t ib = 0;
    for (std::size_t k = 1; k < coarse_points; ++k)
        if (scan.curve[k].indistinguishability > scan.curve[ib].indistinguishability) ib = k;

    double lo = bw[ib > 0 ? ib - 1 : 0];
    double hi = bw[std::min(ib + 1, coarse_points - 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = indist_at(x1), f2 = indist_at(x2);
    while (hi - lo > 1e-3) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = indist_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = indist_at(x1);
        }
    }
    scan.best_bandwidth_nm = 0.5 * (lo + hi);
    scan.best_indistinguishability = indist_at(scan.best_bandwidth_nm);
    if (scan.curve[ib].indistinguishability > scan.best_indistinguishability) {
        scan.best_bandwidth_nm = scan.curve[ib].bandwidth_nm;
        scan.best_indistinguishability = scan.curve[ib].indistinguishability;
    }
    return scan;
}

}  // namespace

BandwidthScan optimize_pump_bandwidth(const CrystalSpec& crystal, const PhaseMatchSpec& pm,
                                      PumpShape shape, double min_bw_nm, double max_bw_nm,
                                      const FreqGrid& grid, const BandwidthSweepOptions& opts) {
    grid.validate();
    const double omega_p0 = grid.omega_s0 + grid.omega_i0;
    auto indist_at = [&](double bw) {
        BuildOptions bo;
        bo.include_phase = opts.include_phase;
        JointSpectrum js = build_jsa(make_pump(shape, bw, omega_p0), crystal, pm, grid, bo);
        return indistinguishability(js);
    };
    return sweep_bandwidth(indist_at, min_bw_nm, max_bw_nm, opts.coarse_points);
}

BandwidthScan optimize_pump_bandwidth_tabulated(const TabulatedPhaseMatch& phi, PumpShape shape,
                                                double min_bw_nm, double max_bw_nm,
                                                const FreqGrid& grid,
                                                const BandwidthSweepOptions& opts) {
    grid.validate();
    const double omega_p0 = grid.omega_s0 + grid.omega_i0;
    auto indist_at = [&](double bw) {
        JointSpectrum js = build_jsa_tabulated(make_pump(shape, bw, omega_p0), phi, grid);
        return indistinguishability(js);
    };
    return sweep_bandwidth(indist_at, min_bw_nm, max_bw_nm, opts.coarse_points);
}

double coincidence_error_ratio(double pair_probability, double separation_error) {
    if (!(pair_probability > 0.0 && pair_probability <= 1.0))
        throw DomainError("coincidence error ratio: pair probability must be in (0,1]");
    if (!(separation_error >= 0.0 && separation_error <= 1.0))
        throw DomainError("coincidence error ratio: separation error must be in [0,1]");
    return separation_error / pair_probability;
}

double sfg_error_probability(double separation_error) {
    if (!(separation_error >= 0.0 && separation_error <= 1.0))
        throw DomainError("SFG error probability: separation error must be in [0,1]");
    return separation_error * separation_error;
}

}  // namespace qpm
