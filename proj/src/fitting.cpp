#include "qpm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qpm/error.hpp"
#include "qpm/kernels.hpp"
#include "qpm/parallel.hpp"
#include "qpm/phase_match.hpp"
#include "qpm/units.hpp"

namespace qpm {

const char* fit_param_name(FitParam p) {
    switch (p) {
        case FitParam::PolingPeriod: return "poling_period_um";
        case FitParam::Length: return "length_mm";
        case FitParam::Duty: return "duty";
    }
    return "?";
}

CrossSection anticorrelated_cross_section(const std::vector<double>& axis1_nm,
                                          const std::vector<double>& axis2_nm,
                                          const std::vector<double>& matrix,
                                          double pump_wavelength_nm) {
    if (axis1_nm.size() < 2 || axis2_nm.size() < 2)
        throw ConfigError("cross-section: need a 2-D scan");
    if (matrix.size() != axis1_nm.size() * axis2_nm.size())
        throw ConfigError("cross-section: matrix size does not match axes");
    if (!(pump_wavelength_nm > 0.0)) throw ConfigError("cross-section: bad pump wavelength");

    CrossSection cs;
    const std::size_t n2 = axis2_nm.size();
    for (std::size_t i = 0; i < axis1_nm.size(); ++i) {
        const double ls = axis1_nm[i];
        const double den = 1.0 / pump_wavelength_nm - 1.0 / ls;
        if (!(den > 0.0)) continue;
        const double li = 1.0 / den;
        if (li < axis2_nm.front() || li > axis2_nm.back()) continue;
        auto it = std::upper_bound(axis2_nm.begin(), axis2_nm.end(), li);
        std::size_t hi = static_cast<std::size_t>(it - axis2_nm.begin());
        if (hi == 0) hi = 1;
        if (hi == n2) hi = n2 - 1;
        const std::size_t lo = hi - 1;
        const double t = (li - axis2_nm[lo]) / (axis2_nm[hi] - axis2_nm[lo]);
        cs.lambda_s_nm.push_back(ls);
        cs.intensity.push_back((1.0 - t) * matrix[i * n2 + lo] + t * matrix[i * n2 + hi]);
    }
    if (cs.lambda_s_nm.empty())
        throw DomainError("cross-section: the anti-correlation line does not intersect the scan");
    return cs;
}

void FitProblem::validate() const {
    if (free.empty()) throw ConfigError("fit: need at least one free parameter");
    for (const auto& [p, b] : free) {
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.hi > b.lo))
            throw ConfigError(std::string("fit: bounds for ") + fit_param_name(p) +
                              " must be finite with hi > lo");
    }
    if (obs.intensity.empty()) throw ConfigError("fit: empty observation");
    for (double v : obs.intensity)
        if (!std::isfinite(v) || v < 0.0)
            throw ConfigError("fit: observations must be finite and >= 0");
    const std::size_t expect = obs.geometry == FitObservation::Geometry::Grid2D
                                   ? obs.lambda1_nm.size() * obs.lambda2_nm.size()
                                   : obs.lambda1_nm.size();
    if (obs.intensity.size() != expect)
        throw ConfigError("fit: observation size does not match its axes");
    if (obs.geometry == FitObservation::Geometry::CrossSection && !(obs.pump_nm > 0.0))
        throw ConfigError("fit: cross-section observation needs a pump wavelength");
    if (starts_per_param < 1) throw ConfigError("fit: starts_per_param must be >= 1");
}

CrystalSpec FitResult::apply_to(const CrystalSpec& base) const {
    CrystalSpec c = base;
    for (const auto& [p, v] : values) {
        switch (p) {
            case FitParam::PolingPeriod: c.poling_period_um = v; break;
            case FitParam::Length: c.length_mm = v; break;
            case FitParam::Duty: c.duty = v; break;
        }
    }
    return c;
}

namespace {

// Everything about the objective that does not depend on the free
// parameters: per-point unpoled mismatch (Sellmeier is held fixed during
// fits) and the normalized observations.
struct ObjectiveContext {
    std::vector<double> dk_unpoled;  // rad/m per observation point
    std::vector<double> obs;         // peak-normalized intensities
    std::vector<FitParam> order;     // free parameters, deterministic order
    const FitProblem* problem = nullptr;
};

ObjectiveContext make_context(const FitProblem& pb) {
    ObjectiveContext ctx;
    ctx.problem = &pb;
    for (const auto& [p, b] : pb.free) ctx.order.push_back(p);

    const auto& obs = pb.obs;
    using G = FitObservation::Geometry;
    if (obs.geometry == G::CrossSection) {
        const double omega_p = omega_from_wavelength_nm(obs.pump_nm);
        for (double ls : obs.lambda1_nm) {
            const double w1 = omega_from_wavelength_nm(ls);
            ctx.dk_unpoled.push_back(phase_mismatch_unpoled(w1, omega_p - w1, pb.base));
        }
    } else if (obs.geometry == G::Diagonal) {
        for (double l : obs.lambda1_nm) {
            const double w = omega_from_wavelength_nm(l);
            ctx.dk_unpoled.push_back(phase_mismatch_unpoled(w, w, pb.base));
        }
    } else {
        for (double l1 : obs.lambda1_nm)
            for (double l2 : obs.lambda2_nm)
                ctx.dk_unpoled.push_back(phase_mismatch_unpoled(
                    omega_from_wavelength_nm(l1), omega_from_wavelength_nm(l2), pb.base));
    }

    double peak = 0.0;
    for (double v : obs.intensity) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw DomainError("fit: observation is identically zero");
    ctx.obs.reserve(obs.intensity.size());
    for (double v : obs.intensity) ctx.obs.push_back(v / peak);
    return ctx;
}

// |phi|^2 model for one parameter point, written into `model`.
void eval_model(const ObjectiveContext& ctx, const std::vector<double>& params,
                std::vector<double>& model) {
    const FitProblem& pb = *ctx.problem;
    double period_um = pb.base.poling_period_um;
    double length_mm = pb.base.length_mm;
    double duty = pb.base.duty;
    for (std::size_t k = 0; k < ctx.order.size(); ++k) {
        switch (ctx.order[k]) {
            case FitParam::PolingPeriod: period_um = params[k]; break;
            case FitParam::Length: length_mm = params[k]; break;
            case FitParam::Duty: duty = params[k]; break;
        }
    }
    const std::size_t n = ctx.dk_unpoled.size();
    model.resize(n);
    if (pb.model == FitProblem::Model::UniformSinc) {
        const double grating =
            pb.base.grating_sign * kTwoPi * pb.base.qpm_order / (period_um * 1e-6);
        const double half_L = 0.5 * length_mm * 1e-3;
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = (ctx.dk_unpoled[k] - grating) * half_L;
        kernels::sinc_mag2(x.data(), model.data(), n);
    } else {
        const std::size_t periods = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(length_mm * 1e3 / period_um)));
        DomainProfile g = make_grating(period_um * 1e-6, duty, periods);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = std::abs(pm_amplitude_domains(ctx.dk_unpoled[k], g));
            model[k] = a * a;
        }
    }
}

struct LinearFit {
    double scale = 1.0;
    double background = 0.0;
    double ssr = 0.0;
};

// Closed-form least squares of obs ~ scale*model + background.
LinearFit solve_linear(const std::vector<double>& model, const std::vector<double>& obs,
                       bool fit_background) {
    const std::size_t n = model.size();
    double smm = 0.0, sm = 0.0, so = 0.0, smo = 0.0, soo = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        smm += model[k] * model[k];
        sm += model[k];
        so += obs[k];
        smo += model[k] * obs[k];
        soo += obs[k] * obs[k];
    }
    LinearFit lf;
    if (fit_background) {
        const double det = smm * n - sm * sm;
        if (std::abs(det) > 1e-300) {
            lf.scale = (smo * n - sm * so) / det;
            lf.background = (smm * so - sm * smo) / det;
        } else {  // flat model; all weight on the background
            lf.scale = 0.0;
            lf.background = so / n;
        }
    } else {
        lf.scale = smm > 1e-300 ? smo / smm : 0.0;
    }
    lf.ssr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = obs[k] - lf.scale * model[k] - lf.background;
        lf.ssr += r * r;
    }
    return lf;
}

struct Objective {
    const ObjectiveContext* ctx;
    mutable std::vector<double> scratch;
    mutable std::size_t evals = 0;

    double operator()(const std::vector<double>& p) const {
        eval_model(*ctx, p, scratch);
        const double ssr = solve_linear(scratch, ctx->obs, ctx->problem->fit_background).ssr;
        ++evals;
        if (!std::isfinite(ssr)) {
            std::ostringstream os;
            os << "fit: non-finite objective at";
            for (std::size_t k = 0; k < p.size(); ++k)
                os << ' ' << fit_param_name(ctx->order[k]) << '=' << p[k];
            throw DomainError(os.str());
        }
        return ssr;
    }
};

struct StartOutcome {
    std::vector<double> params;
    double value = std::numeric_limits<double>::infinity();
    std::size_t evals = 0;
    bool converged = false;
};

// Standard Nelder-Mead; out-of-bounds points are not evaluated but charged a
// graded penalty, which steers the simplex back inside without collapsing its
// rank against a box face (hard clamping does, and then the spread criterion
// fires at a bogus boundary point).  Stops when the simplex value spread
// shrinks below tol relative to the best value, or the budget runs out.
StartOutcome nelder_mead(const Objective& f, const std::vector<double>& x0,
                         const std::vector<ParamBounds>& bounds, std::size_t max_evals,
                         double tol) {
    const std::size_t n = x0.size();
    auto penalized = [&](const std::vector<double>& x) {
        double dist2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double range = bounds[k].hi - bounds[k].lo;
            if (x[k] < bounds[k].lo) {
                const double d = (bounds[k].lo - x[k]) / range;
                dist2 += d * d;
            } else if (x[k] > bounds[k].hi) {
                const double d = (x[k] - bounds[k].hi) / range;
                dist2 += d * d;
            }
        }
        if (dist2 > 0.0) return 1e9 * (1.0 + dist2);  // dominates any in-box SSR
        return f(x);
    };

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    for (std::size_t k = 0; k < n; ++k) {
        auto v = x0;
        const double h = 0.05 * (bounds[k].hi - bounds[k].lo);
        v[k] = v[k] + h <= bounds[k].hi ? v[k] + h : v[k] - h;
        pts.push_back(std::move(v));
    }
    const std::size_t evals_before = f.evals;
    for (const auto& p : pts) vals.push_back(penalized(p));

    StartOutcome out;
    while (f.evals - evals_before < max_evals) {
        // order ascending
        std::vector<std::size_t> idx(pts.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return vals[a] < vals[b];
        });
        std::vector<std::vector<double>> sp;
        std::vector<double> sv;
        for (std::size_t k : idx) {
            sp.push_back(pts[k]);
            sv.push_back(vals[k]);
        }
        pts = std::move(sp);
        vals = std::move(sv);

        if (vals.back() - vals.front() <= tol * std::max(std::abs(vals.front()), 1e-300)) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k + 1 < pts.size(); ++k)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[k][d];
        for (double& c : centroid) c /= static_cast<double>(pts.size() - 1);

        auto combine = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + t * (pts.back()[d] - centroid[d]);
            return x;
        };

        auto xr = combine(-1.0);
        const double fr = penalized(xr);
        if (fr < vals.front()) {
            auto xe = combine(-2.0);
            const double fe = penalized(xe);
            if (fe < fr) {
                pts.back() = xe;
                vals.back() = fe;
            } else {
                pts.back() = xr;
                vals.back() = fr;
            }
        } else if (fr < vals[vals.size() - 2]) {
            pts.back() = xr;
            vals.back() = fr;
        } else {
            auto xc = combine(0.5);
            const double fc = penalized(xc);
            if (fc < vals.back()) {
                pts.back() = xc;
                vals.back() = fc;
            } else {
                for (std::size_t k = 1; k < pts.size(); ++k) {
                    for (std::size_t d = 0; d < n; ++d)
                        pts[k][d] = pts[0][d] + 0.5 * (pts[k][d] - pts[0][d]);
                    vals[k] = penalized(pts[k]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (vals[k] < vals[best]) best = k;
    out.params = pts[best];
    out.value = vals[best];
    out.evals = f.evals - evals_before;
    return out;
}

}  // namespace

FitResult fit_crystal(const FitProblem& problem) {
    problem.validate();
    const ObjectiveContext ctx = make_context(problem);
    const std::size_t n = ctx.order.size();

    std::vector<ParamBounds> bounds;
    for (FitParam p : ctx.order) bounds.push_back(problem.free.at(p));

    // Multi-start coarse grid.
    const std::size_t g = problem.starts_per_param;
    std::size_t n_starts = 1;
    for (std::size_t k = 0; k < n; ++k) n_starts *= g;
    std::vector<std::vector<double>> starts(n_starts, std::vector<double>(n));
    for (std::size_t s = 0; s < n_starts; ++s) {
        std::size_t rem = s;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t cell = rem % g;
            rem /= g;
            const double t = g == 1 ? 0.5 : static_cast<double>(cell) / static_cast<double>(g - 1);
            starts[s][k] = bounds[k].lo + t * (bounds[k].hi - bounds[k].lo);
        }
    }

    const std::size_t budget_per_start = std::max<std::size_t>(64, problem.max_evaluations / n_starts);
    std::vector<StartOutcome> outcomes(n_starts);
    parallel_for(n_starts, [&](std::size_t s) {
        Objective f{&ctx, {}, 0};
        outcomes[s] = nelder_mead(f, starts[s], bounds, budget_per_start, problem.tolerance);
    });

    // Deterministic winner: lowest residual, ties broken by parameter order.
    std::size_t best = 0;
    std::size_t total_evals = 0;
    for (std::size_t s = 0; s < n_starts; ++s) {
        total_evals += outcomes[s].evals;
        if (outcomes[s].value < outcomes[best].value ||
            (outcomes[s].value == outcomes[best].value && outcomes[s].params < outcomes[best].params))
            best = s;
    }

    const StartOutcome& win = outcomes[best];
    Objective f{&ctx, {}, 0};
    std::vector<double> model;
    eval_model(ctx, win.params, model);
    const LinearFit lf = solve_linear(model, ctx.obs, problem.fit_background);

    FitResult res;
    for (std::size_t k = 0; k < n; ++k) res.values[ctx.order[k]] = win.params[k];
    res.scale = lf.scale;
    res.background = lf.background;
    res.residual = lf.ssr;
    res.evaluations = total_evals;
    res.converged = win.converged;

    for (std::size_t k = 0; k < n; ++k) {
        const double h = 1e-4 * (bounds[k].hi - bounds[k].lo);
        auto lo = win.params, hi = win.params;
        lo[k] = std::max(bounds[k].lo, lo[k] - h);
        hi[k] = std::min(bounds[k].hi, hi[k] + h);
        const double span = 0.5 * (hi[k] - lo[k]);
        if (span > 0.0)
            res.sensitivity[ctx.order[k]] = (f(hi) - 2.0 * win.value + f(lo)) / (span * span);
        else
            res.sensitivity[ctx.order[k]] = 0.0;
    }
    return res;
}

std::string fit_report(const FitResult& result) {
    std::ostringstream os;
    os.precision(10);
    os << "fit result\n";
    for (const auto& [p, v] : result.values)
        os << "  " << fit_param_name(p) << ": " << v << "  (curvature "
           << result.sensitivity.at(p) << ")\n";
    os << "  scale: " << result.scale << "\n";
    os << "  background: " << result.background << "\n";
    os << "  residual: " << result.residual << "\n";
    os << "  evaluations: " << result.evaluations << "\n";
    os << "  converged: " << (result.converged ? "true" : "false");
    if (!result.converged) os << "  (evaluation budget reached)";
    os << "\n";
    return os.str();
}

}  // namespace qpm
