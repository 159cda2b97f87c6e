#include "qpm/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qpm/error.hpp"
#include "qpm/units.hpp"

namespace qpm::io {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string matrix_csv_text(const std::vector<double>& axis1_nm,
                            const std::vector<double>& axis2_nm, const std::vector<double>& re,
                            const std::vector<double>* im) {
    const std::size_t n1 = axis1_nm.size(), n2 = axis2_nm.size();
    if (re.size() != n1 * n2) throw ConfigError("matrix CSV: size mismatch");
    std::string out;
    out.reserve(re.size() * 14 + n2 * 12);
    for (std::size_t j = 0; j < n2; ++j) {
        out += ',';
        out += format_double(axis2_nm[j]);
    }
    out += '\n';
    for (std::size_t i = 0; i < n1; ++i) {
        out += format_double(axis1_nm[i]);
        for (std::size_t j = 0; j < n2; ++j) {
            out += ',';
            const std::size_t k = i * n2 + j;
            if (im) {
                out += '"';
                out += format_double(re[k]);
                out += ',';
                out += format_double((*im)[k]);
                out += '"';
            } else {
                out += format_double(re[k]);
            }
        }
        out += '\n';
    }
    return out;
}

namespace {

double parse_num(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw ConfigError("CSV: bad number '" + std::string(s) + "'");
    return v;
}

// Splits one CSV line; quoted fields may contain commas.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (quoted) {
            if (c == '"')
                quoted = false;
            else
                cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

MatrixCsv parse_matrix_csv(const std::string& text) {
    MatrixCsv m;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("matrix CSV: empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2 || !header[0].empty())
        throw ConfigError("matrix CSV: first row must start with an empty field");
    for (std::size_t j = 1; j < header.size(); ++j) m.axis2_nm.push_back(parse_num(header[j]));

    bool complex_cells = false;
    bool first_row = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw ConfigError("matrix CSV: ragged row (got " + std::to_string(f.size()) +
                              " fields, expected " + std::to_string(header.size()) + ")");
        m.axis1_nm.push_back(parse_num(f[0]));
        if (first_row) {
            complex_cells = f[1].find(',') != std::string::npos;
            first_row = false;
        }
        for (std::size_t j = 1; j < f.size(); ++j) {
            if (complex_cells) {
                auto pos = f[j].find(',');
                if (pos == std::string::npos)
                    throw ConfigError("matrix CSV: expected a complex \"re,im\" cell");
                m.re.push_back(parse_num(std::string_view(f[j]).substr(0, pos)));
                m.im.push_back(parse_num(std::string_view(f[j]).substr(pos + 1)));
            } else {
                m.re.push_back(parse_num(f[j]));
            }
        }
    }
    if (m.axis1_nm.empty()) throw ConfigError("matrix CSV: no data rows");
    return m;
}

MatrixCsv read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open CSV: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix_csv(ss.str());
}

std::string curve_csv_text(const std::vector<std::string>& names,
                           const std::vector<const std::vector<double>*>& columns) {
    if (names.size() != columns.size() || columns.empty())
        throw ConfigError("curve CSV: column/name mismatch");
    const std::size_t n = columns[0]->size();
    for (const auto* c : columns)
        if (c->size() != n) throw ConfigError("curve CSV: column length mismatch");
    std::string out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (c) out += ',';
        out += names[c];
    }
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double((*columns[c])[i]);
        }
        out += '\n';
    }
    return out;
}

CurveCsv read_curve_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open CSV: " + path);
    CurveCsv c;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("curve CSV: empty file");
    for (auto& name : split_csv_line(line)) c.names.push_back(name);
    c.columns.resize(c.names.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != c.names.size()) throw ConfigError("curve CSV: ragged row");
        for (std::size_t k = 0; k < f.size(); ++k) c.columns[k].push_back(parse_num(f[k]));
    }
    return c;
}

void write_jsa(const std::string& base_path, const JointSpectrum& js,
               const std::string& provenance) {
    const std::size_t n1 = js.rows(), n2 = js.cols();
    std::vector<double> ax1(n1), ax2(n2);
    for (std::size_t i = 0; i < n1; ++i)
        ax1[i] = wavelength_nm_from_omega(js.omega_s0 + js.omega_s[i]);
    for (std::size_t j = 0; j < n2; ++j)
        ax2[j] = wavelength_nm_from_omega(js.omega_i0 + js.omega_i[j]);
    // Complex "re,im" cells always, so the format does not depend on flags.
    std::vector<double> im = js.im;
    if (im.empty()) im.assign(js.re.size(), 0.0);
    atomic_write_file(base_path + ".csv", matrix_csv_text(ax1, ax2, js.re, &im));

    nlohmann::ordered_json meta;
    meta["kind"] = "joint_spectrum";
    meta["omega_s0_rad_s"] = js.omega_s0;
    meta["omega_i0_rad_s"] = js.omega_i0;
    meta["signal_center_nm"] = wavelength_nm_from_omega(js.omega_s0);
    meta["idler_center_nm"] = wavelength_nm_from_omega(js.omega_i0);
    meta["grid"] = {{"n_signal", n1}, {"n_idler", n2}};
    meta["normalized"] = js.normalized;
    meta["include_phase"] = js.include_phase;
    meta["provenance"] = provenance;
    atomic_write_file(base_path + ".json", meta.dump(2) + "\n");
}

JointSpectrum read_jsa(const std::string& base_path) {
    MatrixCsv m = read_matrix_csv(base_path + ".csv");
    std::ifstream in(base_path + ".json");
    if (!in) throw ConfigError("cannot open JSA sidecar: " + base_path + ".json");
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad JSA sidecar: ") + e.what());
    }
    JointSpectrum js;
    js.omega_s0 = meta.at("omega_s0_rad_s").get<double>();
    js.omega_i0 = meta.at("omega_i0_rad_s").get<double>();
    js.normalized = meta.value("normalized", false);
    js.include_phase = meta.value("include_phase", false);
    js.omega_s.resize(m.axis1_nm.size());
    js.omega_i.resize(m.axis2_nm.size());
    for (std::size_t i = 0; i < m.axis1_nm.size(); ++i)
        js.omega_s[i] = omega_from_wavelength_nm(m.axis1_nm[i]) - js.omega_s0;
    for (std::size_t j = 0; j < m.axis2_nm.size(); ++j)
        js.omega_i[j] = omega_from_wavelength_nm(m.axis2_nm[j]) - js.omega_i0;
    js.re = std::move(m.re);
    bool any_im = false;
    for (double v : m.im)
        if (v != 0.0) any_im = true;
    if (any_im) js.im = std::move(m.im);
    return js;
}

void write_scan(const std::string& base_path, const ScanResult& result,
                const std::string& config_echo_json) {
    if (!result.axis2_nm.empty()) {
        atomic_write_file(base_path + ".csv",
                          matrix_csv_text(result.axis1_nm, result.axis2_nm, result.expected_rate));
        if (result.sampled) {
            std::vector<double> cnt(result.counts.size());
            for (std::size_t k = 0; k < cnt.size(); ++k)
                cnt[k] = static_cast<double>(result.counts[k]);
            atomic_write_file(base_path + "_counts.csv",
                              matrix_csv_text(result.axis1_nm, result.axis2_nm, cnt));
        }
    } else {
        std::vector<std::string> names{"wavelength_nm", "expected_cps"};
        std::vector<const std::vector<double>*> cols{&result.axis1_nm, &result.expected_rate};
        std::vector<double> cnt;
        if (result.sampled) {
            cnt.resize(result.counts.size());
            for (std::size_t k = 0; k < cnt.size(); ++k)
                cnt[k] = static_cast<double>(result.counts[k]);
            names.push_back("counts");
            cols.push_back(&cnt);
        }
        for (std::size_t c = 0; c < result.components.size(); ++c) {
            names.push_back(result.component_names[c]);
            cols.push_back(&result.components[c]);
        }
        atomic_write_file(base_path + ".csv", curve_csv_text(names, cols));
    }

    nlohmann::ordered_json meta;
    meta["kind"] = result.axis2_nm.empty() ? "shg_scan" : "sfg_scan";
    meta["detector"] = {{"efficiency", result.detector.efficiency},
                        {"dark_count_rate_cps", result.detector.dark_count_rate},
                        {"integration_time_s", result.detector.integration_time_s}};
    meta["sampled"] = result.sampled;
    if (result.sampled) meta["seed"] = result.seed;
    if (!result.warnings.empty()) meta["warnings"] = result.warnings;
    if (!config_echo_json.empty()) meta["config"] = nlohmann::json::parse(config_echo_json);
    atomic_write_file(base_path + ".json", meta.dump(2) + "\n");
}

}  // namespace qpm::io
