// qpm: QPM crystal photon-pair source toolkit.
//
// Subcommands: simulate-sfg, simulate-shg, build-jsa, fit, schmidt,
// optimize-pump, error-model.  Each takes a JSON run config (--config);
// --seed / --out / --format override the file.  Exit codes: 0 success,
// 2 config error, 3 numeric/domain error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpm/dispersion.hpp"
#include "qpm/error.hpp"
#include "qpm/fitting.hpp"
#include "qpm/io.hpp"
#include "qpm/joint_spectrum.hpp"
#include "qpm/kernels.hpp"
#include "qpm/scan.hpp"
#include "qpm/schmidt.hpp"
#include "qpm/svg.hpp"
#include "qpm/units.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::set<std::string> formats;  // csv/json/svg; json metadata always written
    std::string kernels = "auto";

    bool want(const std::string& f) const { return formats.empty() || formats.count(f); }
    std::string path(const std::string& name) const {
        return (std::filesystem::path(out_dir) / name).string();
    }
};

json load_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) throw qpm::ConfigError("--config is required");
    std::ifstream in(opts.config_path);
    if (!in) throw qpm::ConfigError("cannot open config: " + opts.config_path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw qpm::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

// Paths inside the config are resolved relative to the config file.
std::string resolve_path(const CommonOpts& opts, const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return p;
    return (std::filesystem::path(opts.config_path).parent_path() / fp).string();
}

qpm::PolarizationConfig polarization_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "type-ii" || s == "type-II") return qpm::PolarizationConfig::type_ii();
        if (s == "type-i" || s == "type-I") return qpm::PolarizationConfig::type_i();
        if (s == "type-0") return qpm::PolarizationConfig::type_0();
        throw qpm::ConfigError("unknown polarization '" + s + "' (type-ii, type-i, type-0)");
    }
    qpm::PolarizationConfig p;
    p.pump = qpm::axis_from_name(j.at("pump").get<std::string>());
    p.signal = qpm::axis_from_name(j.at("signal").get<std::string>());
    p.idler = qpm::axis_from_name(j.at("idler").get<std::string>());
    return p;
}

qpm::CrystalSpec crystal_from_json(const json& j, const qpm::SellmeierData& sm) {
    qpm::CrystalSpec c;
    c.sellmeier = sm;
    c.poling_period_um = j.at("poling_period_um").get<double>();
    c.length_mm = j.at("length_mm").get<double>();
    c.duty = j.value("duty", 0.5);
    c.qpm_order = j.value("qpm_order", 1);
    if (j.contains("polarization")) c.pol = polarization_from_json(j.at("polarization"));
    // Default grating branch: the Type-II configuration of this crystal
    // family compensates a negative intrinsic mismatch.
    const bool is_type_ii = c.pol.pump == qpm::Axis::Y;
    c.grating_sign = j.value("grating_sign", is_type_ii ? -1 : +1);
    c.validate();
    return c;
}

qpm::SellmeierData sellmeier_from_config(const json& cfg, const CommonOpts& opts) {
    if (!cfg.contains("sellmeier"))
        throw qpm::ConfigError("config: missing 'sellmeier' (path to the dispersion data file)");
    return qpm::load_sellmeier_file(resolve_path(opts, cfg.at("sellmeier").get<std::string>()));
}

qpm::DetectorModel detector_from_json(const json& cfg) {
    qpm::DetectorModel d;
    if (cfg.contains("detector")) {
        const json& j = cfg.at("detector");
        d.efficiency = j.value("efficiency", 1.0);
        d.dark_count_rate = j.value("dark_count_rate_cps", 100.0);
        d.integration_time_s = j.value("integration_time_s", 1.0);
    }
    d.validate();
    return d;
}

qpm::WavelengthAxis axis_from_json(const json& j) {
    qpm::WavelengthAxis a;
    a.min_nm = j.at("min").get<double>();
    a.max_nm = j.at("max").get<double>();
    a.step_nm = j.at("step").get<double>();
    a.validate();
    return a;
}

std::uint64_t required_seed(const json& section, const CommonOpts& opts) {
    if (opts.seed) return *opts.seed;
    if (section.contains("seed")) return section.at("seed").get<std::uint64_t>();
    throw qpm::ConfigError("sampling requested but no seed given (config 'seed' or --seed)");
}

// Grid center: the degenerate operating point.  Near a group-velocity-matched
// design dk(w,w) can cross zero twice; center on the midpoint in omega.
double auto_center_omega(const qpm::CrystalSpec& crystal) {
    const double lam1 = qpm::degenerate_qpm_wavelength(crystal);
    const double w1 = qpm::omega_from_wavelength_um(lam1);
    const double step_um = 1e-3;
    double fa = 0.0;
    bool have = false;
    for (double a = lam1 + step_um; a < lam1 + 0.030; a += step_um) {
        double f;
        try {
            const double w = qpm::omega_from_wavelength_um(a);
            f = qpm::phase_mismatch(w, w, crystal);
        } catch (const qpm::RangeError&) {
            break;
        }
        if (have && (f < 0.0) != (fa < 0.0)) {
            const double w2 = qpm::omega_from_wavelength_um(a - 0.5 * step_um);
            return 0.5 * (w1 + w2);
        }
        fa = f;
        have = true;
    }
    return w1;
}

qpm::FreqGrid grid_from_json(const json& j, const qpm::CrystalSpec& crystal) {
    const std::size_t n = j.value("n", std::size_t{512});
    const double span_nm = j.value("span_nm", 10.0);
    double w0;
    if (!j.contains("center_um") || j.at("center_um").is_string()) {
        w0 = auto_center_omega(crystal);
    } else {
        w0 = qpm::omega_from_wavelength_um(j.at("center_um").get<double>());
    }
    return qpm::FreqGrid::centered_um(qpm::wavelength_um_from_omega(w0), span_nm, n);
}

qpm::PumpEnvelope pump_from_json(const json& j, const qpm::FreqGrid& grid) {
    const std::string shape = j.at("shape").get<std::string>();
    double w0;
    if (j.contains("center_nm"))
        w0 = qpm::omega_from_wavelength_nm(j.at("center_nm").get<double>());
    else
        w0 = grid.omega_s0 + grid.omega_i0;
    if (shape == "tabulated") {
        std::vector<double> ws, as;
        for (const auto& pair : j.at("samples")) {
            ws.push_back(qpm::omega_from_wavelength_nm(pair.at(0).get<double>()));
            as.push_back(pair.at(1).get<double>());
        }
        // samples come in ascending wavelength = descending frequency
        std::reverse(ws.begin(), ws.end());
        std::reverse(as.begin(), as.end());
        return qpm::PumpEnvelope::tabulated(std::move(ws), std::move(as));
    }
    const double bw_nm = j.at("bandwidth_nm").get<double>();
    const double dw = qpm::omega_per_nm_at(qpm::wavelength_nm_from_omega(w0)) * bw_nm;
    if (shape == "gaussian")
        return qpm::PumpEnvelope::gaussian(w0, dw / (2.0 * std::sqrt(0.5 * std::log(2.0))));
    if (shape == "rectangular") return qpm::PumpEnvelope::rectangular(w0, dw);
    throw qpm::ConfigError("pump shape must be gaussian, rectangular or tabulated");
}

void write_json_out(const CommonOpts& opts, const std::string& name, const ordered_json& j) {
    qpm::io::atomic_write_file(opts.path(name), j.dump(2) + "\n");
}

ordered_json echo_config(const json& cfg) { return ordered_json::parse(cfg.dump()); }

// Reads a scan-intensity matrix CSV into a tabulated |phi| (sqrt, zero phase).
qpm::TabulatedPhaseMatch tabulated_from_csv(const std::string& path) {
    auto m = qpm::io::read_matrix_csv(path);
    std::vector<double> ws, wi;
    for (double v : m.axis1_nm) ws.push_back(qpm::omega_from_wavelength_nm(v));
    for (double v : m.axis2_nm) wi.push_back(qpm::omega_from_wavelength_nm(v));
    std::reverse(ws.begin(), ws.end());
    std::reverse(wi.begin(), wi.end());
    std::vector<double> intens(m.re.size());
    const std::size_t n1 = m.axis1_nm.size(), n2 = m.axis2_nm.size();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            intens[(n1 - 1 - i) * n2 + (n2 - 1 - j)] = m.re[i * n2 + j];
    return qpm::TabulatedPhaseMatch::from_intensity(std::move(ws), std::move(wi), intens);
}

// ---------------------------------------------------------------- commands

int cmd_simulate_sfg(const CommonOpts& opts) {
    json cfg = load_config(opts);
    const auto sm = sellmeier_from_config(cfg, opts);
    const auto crystal = crystal_from_json(cfg.at("crystal"), sm);
    const auto det = detector_from_json(cfg);
    const json& sec = cfg.at("simulate_sfg");

    qpm::ScanConfig sc;
    sc.axis1 = axis_from_json(sec.at("signal_nm"));
    sc.axis2 = axis_from_json(sec.at("idler_nm"));
    sc.calibration_cps = sec.value("calibration_cps", 1e6);
    sc.sample = sec.value("sample", true);
    if (sc.sample) {
        sc.seed = required_seed(sec, opts);
        sc.has_seed = true;
    }
    qpm::ScanResult r = qpm::simulate_sfg_scan(sc, crystal, det);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

    ordered_json meta;
    meta["command"] = "simulate-sfg";
    meta["config"] = echo_config(cfg);
    if (sc.has_seed) meta["seed"] = sc.seed;
    meta["snr_db"] = qpm::snr(r);
    if (opts.want("csv"))
        qpm::io::write_scan(opts.path("sfg_scan"), r, meta.dump());
    else
        write_json_out(opts, "sfg_scan.json", meta);
    if (opts.want("svg"))
        qpm::io::atomic_write_file(opts.path("sfg_scan.svg"),
                                   qpm::io::heatmap_svg(r.axis1_nm, r.axis2_nm, r.expected_rate,
                                                        "SFG expected rate (counts/s)"));
    return 0;
}

int cmd_simulate_shg(const CommonOpts& opts) {
    json cfg = load_config(opts);
    const auto sm = sellmeier_from_config(cfg, opts);
    const auto det = detector_from_json(cfg);
    const json& sec = cfg.at("simulate_shg");

    qpm::ScanConfig sc;
    sc.axis1 = axis_from_json(sec.at("sweep_nm"));
    sc.diagonal = true;
    sc.calibration_cps = sec.value("calibration_cps", 1e6);
    sc.sample = sec.value("sample", true);
    if (sc.sample) {
        sc.seed = required_seed(sec, opts);
        sc.has_seed = true;
    }
    std::vector<qpm::ShgProcess> procs;
    for (const auto& pj : sec.at("processes")) {
        qpm::ShgProcess p;
        p.name = pj.value("name", "process_" + std::to_string(procs.size()));
        p.crystal = crystal_from_json(pj, sm);
        p.relative_amplitude = pj.value("relative_amplitude", 1.0);
        procs.push_back(std::move(p));
    }
    qpm::ScanResult r = qpm::simulate_shg_scan(sc, procs, det);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

    ordered_json meta;
    meta["command"] = "simulate-shg";
    meta["config"] = echo_config(cfg);
    if (sc.has_seed) meta["seed"] = sc.seed;
    if (opts.want("csv"))
        qpm::io::write_scan(opts.path("shg_scan"), r, meta.dump());
    else
        write_json_out(opts, "shg_scan.json", meta);
    if (opts.want("svg")) {
        std::vector<const std::vector<double>*> ys{&r.expected_rate};
        std::vector<std::string> names{"total"};
        for (std::size_t c = 0; c < r.components.size(); ++c) {
            ys.push_back(&r.components[c]);
            names.push_back(r.component_names[c]);
        }
        qpm::io::atomic_write_file(
            opts.path("shg_scan.svg"),
            qpm::io::curve_svg(r.axis1_nm, ys, names, "SHG expected rate (counts/s)", true));
    }
    return 0;
}

qpm::JointSpectrum build_jsa_from_config(const json& cfg, const CommonOpts& opts,
                                         ordered_json& meta_out) {
    const auto sm = sellmeier_from_config(cfg, opts);
    const auto crystal = crystal_from_json(cfg.at("crystal"), sm);
    const json& sec = cfg.at("build_jsa");
    const qpm::FreqGrid grid = grid_from_json(sec.value("grid", json::object()), crystal);
    const qpm::PumpEnvelope pump = pump_from_json(sec.at("pump"), grid);

    qpm::BuildOptions bo;
    bo.include_phase = sec.value("include_phase", false);
    bo.normalize = sec.value("normalize", true);

    if (sec.contains("phi_csv")) {
        auto tab = tabulated_from_csv(resolve_path(opts, sec.at("phi_csv").get<std::string>()));
        meta_out["phi_source"] = "tabulated (sqrt of intensity, zero phase)";
        return qpm::build_jsa_tabulated(pump, tab, grid, bo.normalize);
    }
    qpm::PhaseMatchSpec pm = qpm::UniformProfile{crystal.length_m()};
    meta_out["phi_source"] =
        bo.include_phase ? "uniform sinc with exp(i dk L/2) phase" : "uniform sinc, real";
    return qpm::build_jsa(pump, crystal, pm, grid, bo);
}

int cmd_build_jsa(const CommonOpts& opts) {
    json cfg = load_config(opts);
    ordered_json meta;
    meta["command"] = "build-jsa";
    qpm::JointSpectrum js = build_jsa_from_config(cfg, opts, meta);
    meta["config"] = echo_config(cfg);
    if (opts.want("csv")) qpm::io::write_jsa(opts.path("jsa"), js, meta.dump());
    write_json_out(opts, "jsa_meta.json", meta);
    if (opts.want("svg")) {
        std::vector<double> ax1(js.rows()), ax2(js.cols());
        for (std::size_t i = 0; i < js.rows(); ++i)
            ax1[i] = qpm::wavelength_nm_from_omega(js.omega_s0 + js.omega_s[i]);
        for (std::size_t j = 0; j < js.cols(); ++j)
            ax2[j] = qpm::wavelength_nm_from_omega(js.omega_i0 + js.omega_i[j]);
        qpm::io::atomic_write_file(opts.path("jsa.svg"),
                                   qpm::io::heatmap_svg(ax1, ax2, qpm::jsi(js), "JSI |f|^2"));
    }
    return 0;
}

int cmd_fit(const CommonOpts& opts) {
    json cfg = load_config(opts);
    const auto sm = sellmeier_from_config(cfg, opts);
    const json& sec = cfg.at("fit");

    qpm::FitProblem pb;
    pb.base = crystal_from_json(cfg.at("crystal"), sm);

    const std::string geom = sec.value("geometry", "cross-section");
    using G = qpm::FitObservation::Geometry;
    if (geom == "cross-section") {
        pb.obs.geometry = G::CrossSection;
        pb.obs.pump_nm = sec.at("pump_nm").get<double>();
    } else if (geom == "diagonal") {
        pb.obs.geometry = G::Diagonal;
    } else if (geom == "grid2d") {
        pb.obs.geometry = G::Grid2D;
    } else {
        throw qpm::ConfigError("fit geometry must be cross-section, diagonal or grid2d");
    }

    const std::string obs_path = resolve_path(opts, sec.at("observation_csv").get<std::string>());
    if (pb.obs.geometry == G::Grid2D) {
        auto m = qpm::io::read_matrix_csv(obs_path);
        pb.obs.lambda1_nm = m.axis1_nm;
        pb.obs.lambda2_nm = m.axis2_nm;
        pb.obs.intensity = m.re;
    } else {
        auto c = qpm::io::read_curve_csv(obs_path);
        if (c.columns.size() < 2) throw qpm::ConfigError("fit: observation CSV needs >= 2 columns");
        std::size_t ycol = 1;
        if (sec.contains("value_column")) {
            const std::string want = sec.at("value_column").get<std::string>();
            bool found = false;
            for (std::size_t k = 0; k < c.names.size(); ++k)
                if (c.names[k] == want) {
                    ycol = k;
                    found = true;
                }
            if (!found) throw qpm::ConfigError("fit: no CSV column named '" + want + "'");
        }
        pb.obs.lambda1_nm = c.columns[0];
        pb.obs.intensity = c.columns[ycol];
    }

    if (sec.value("model", "uniform") == "domains")
        pb.model = qpm::FitProblem::Model::DomainResolved;
    for (const auto& [key, b] : sec.at("free").items()) {
        qpm::FitParam p;
        if (key == "poling_period_um")
            p = qpm::FitParam::PolingPeriod;
        else if (key == "length_mm")
            p = qpm::FitParam::Length;
        else if (key == "duty")
            p = qpm::FitParam::Duty;
        else
            throw qpm::ConfigError("fit: unknown free parameter '" + key + "'");
        pb.free[p] = {b.at(0).get<double>(), b.at(1).get<double>()};
    }
    pb.fit_background = sec.value("fit_background", true);
    pb.starts_per_param = sec.value("starts_per_param", std::size_t{5});
    pb.max_evaluations = sec.value("max_evaluations", std::size_t{100000});

    qpm::FitResult res = qpm::fit_crystal(pb);

    ordered_json out;
    out["command"] = "fit";
    for (const auto& [p, v] : res.values) out["values"][qpm::fit_param_name(p)] = v;
    out["scale"] = res.scale;
    out["background"] = res.background;
    out["residual"] = res.residual;
    out["evaluations"] = res.evaluations;
    out["converged"] = res.converged;
    for (const auto& [p, v] : res.sensitivity) out["sensitivity"][qpm::fit_param_name(p)] = v;
    out["report"] = qpm::fit_report(res);
    out["config"] = echo_config(cfg);
    write_json_out(opts, "fit_result.json", out);
    std::cout << qpm::fit_report(res);
    return 0;
}

int cmd_schmidt(const CommonOpts& opts) {
    json cfg = load_config(opts);
    ordered_json meta;
    meta["command"] = "schmidt";
    qpm::JointSpectrum js;
    const json& sec = cfg.at("schmidt");
    if (sec.contains("jsa")) {
        meta["jsa_source"] = sec.at("jsa").get<std::string>();
        js = qpm::io::read_jsa(resolve_path(opts, sec.at("jsa").get<std::string>()));
    } else {
        js = build_jsa_from_config(cfg, opts, meta);
    }
    qpm::SchmidtResult r = qpm::schmidt_decompose(js);

    meta["purity"] = r.purity;
    meta["schmidt_number"] = r.schmidt_number;
    meta["indistinguishability"] = r.indistinguishability;
    meta["g2"] = 1.0 + r.purity;
    meta["retained_modes"] = r.retained_modes;
    meta["coefficients"] = r.coefficients;
    meta["config"] = echo_config(cfg);
    write_json_out(opts, "schmidt.json", meta);
    if (opts.want("csv")) {
        std::vector<double> idx(r.coefficients.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k);
        qpm::io::atomic_write_file(
            opts.path("schmidt_coefficients.csv"),
            qpm::io::curve_csv_text({"mode", "coefficient"}, {&idx, &r.coefficients}));
    }
    std::cout << "purity " << r.purity << ", K " << r.schmidt_number << ", I "
              << r.indistinguishability << "\n";
    return 0;
}

int cmd_optimize_pump(const CommonOpts& opts) {
    json cfg = load_config(opts);
    const auto sm = sellmeier_from_config(cfg, opts);
    const auto crystal = crystal_from_json(cfg.at("crystal"), sm);
    const json& sec = cfg.at("optimize_pump");

    const std::string shape_s = sec.at("shape").get<std::string>();
    qpm::PumpShape shape;
    if (shape_s == "gaussian")
        shape = qpm::PumpShape::Gaussian;
    else if (shape_s == "rectangular")
        shape = qpm::PumpShape::Rectangular;
    else
        throw qpm::ConfigError("optimize_pump shape must be gaussian or rectangular");

    const qpm::FreqGrid grid = grid_from_json(sec.value("grid", json::object()), crystal);
    qpm::BandwidthSweepOptions so;
    so.coarse_points = sec.value("points", std::size_t{25});
    so.include_phase = sec.value("include_phase", false);
    const double lo = sec.at("min_bandwidth_nm").get<double>();
    const double hi = sec.at("max_bandwidth_nm").get<double>();

    qpm::BandwidthScan scan;
    if (sec.contains("phi_csv")) {
        auto tab = tabulated_from_csv(resolve_path(opts, sec.at("phi_csv").get<std::string>()));
        scan = qpm::optimize_pump_bandwidth_tabulated(tab, shape, lo, hi, grid, so);
    } else {
        qpm::PhaseMatchSpec pm = qpm::UniformProfile{crystal.length_m()};
        scan = qpm::optimize_pump_bandwidth(crystal, pm, shape, lo, hi, grid, so);
    }

    ordered_json out;
    out["command"] = "optimize-pump";
    out["shape"] = shape_s;
    out["include_phase"] = so.include_phase;
    out["grid_n"] = grid.n_s;
    out["best_bandwidth_nm"] = scan.best_bandwidth_nm;
    out["best_indistinguishability"] = scan.best_indistinguishability;
    json curve = json::array();
    for (const auto& pt : scan.curve) curve.push_back({pt.bandwidth_nm, pt.indistinguishability});
    out["curve"] = curve;
    out["config"] = echo_config(cfg);
    write_json_out(opts, "optimize_pump.json", out);

    std::vector<double> bw, ind;
    for (const auto& pt : scan.curve) {
        bw.push_back(pt.bandwidth_nm);
        ind.push_back(pt.indistinguishability);
    }
    if (opts.want("csv"))
        qpm::io::atomic_write_file(
            opts.path("optimize_pump_curve.csv"),
            qpm::io::curve_csv_text({"bandwidth_nm", "indistinguishability"}, {&bw, &ind}));
    if (opts.want("svg"))
        qpm::io::atomic_write_file(opts.path("optimize_pump_curve.svg"),
                                   qpm::io::curve_svg(bw, {&ind}, {shape_s},
                                                      "Indistinguishability vs pump bandwidth"));
    std::cout << "best bandwidth " << scan.best_bandwidth_nm << " nm, I = "
              << scan.best_indistinguishability << "\n";
    return 0;
}

int cmd_error_model(const CommonOpts& opts) {
    json cfg = load_config(opts);
    const json& sec = cfg.at("error_model");
    const double p = sec.at("pair_probability").get<double>();
    const double re = sec.at("separation_error").get<double>();
    ordered_json out;
    out["command"] = "error-model";
    out["pair_probability"] = p;
    out["separation_error"] = re;
    out["coincidence_error_ratio"] = qpm::coincidence_error_ratio(p, re);
    out["sfg_error_probability"] = qpm::sfg_error_probability(re);
    out["config"] = echo_config(cfg);
    write_json_out(opts, "error_model.json", out);
    std::cout << "coincidence error ratio " << qpm::coincidence_error_ratio(p, re)
              << ", SFG error probability " << qpm::sfg_error_probability(re) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QPM crystal photon-pair source toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> formats;
    std::uint64_t seed_value = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "run configuration (JSON)");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--format", formats, "output formats (csv/json/svg), repeatable");
        sub->add_option("--seed", seed_value, "RNG seed (overrides config)");
        sub->add_option("--kernels", opts.kernels, "kernel backend: auto/scalar/avx2");
    };

    auto* c1 = app.add_subcommand("simulate-sfg", "frequency-resolved SFG scan");
    auto* c2 = app.add_subcommand("simulate-shg", "wideband diagonal SHG sweep");
    auto* c3 = app.add_subcommand("build-jsa", "build a joint spectral amplitude");
    auto* c4 = app.add_subcommand("fit", "fit crystal parameters to scan data");
    auto* c5 = app.add_subcommand("schmidt", "Schmidt decomposition of a JSA");
    auto* c6 = app.add_subcommand("optimize-pump", "sweep pump bandwidth for max I");
    auto* c7 = app.add_subcommand("error-model", "imperfect-separation error ratios");
    for (auto* s : {c1, c2, c3, c4, c5, c6, c7}) add_common(s);

    CLI11_PARSE(app, argc, argv);

    bool seed_given = false;
    for (auto* s : {c1, c2, c3, c4, c5, c6, c7})
        if (s->parsed() && s->count("--seed") > 0) seed_given = true;
    if (seed_given) opts.seed = seed_value;

    for (const auto& f : formats) {
        if (f != "csv" && f != "json" && f != "svg") {
            std::cerr << "error: unknown format '" << f << "'\n";
            return 2;
        }
        opts.formats.insert(f);
    }

    try {
        qpm::kernels::force(opts.kernels);
        if (c1->parsed()) return cmd_simulate_sfg(opts);
        if (c2->parsed()) return cmd_simulate_shg(opts);
        if (c3->parsed()) return cmd_build_jsa(opts);
        if (c4->parsed()) return cmd_fit(opts);
        if (c5->parsed()) return cmd_schmidt(opts);
        if (c6->parsed()) return cmd_optimize_pump(opts);
        if (c7->parsed()) return cmd_error_model(opts);
    } catch (const qpm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qpm::RangeError& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return 3;
    } catch (const qpm::DomainError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
