#pragma once

#include <string>
#include <vector>

#include "qpm/joint_spectrum.hpp"
#include "qpm/scan.hpp"

namespace qpm::io {

// Shortest round-trip decimal representation; locale-independent, '.' decimal
// separator.  All CSV/JSON output goes through this so reruns are
// byte-identical.
std::string format_double(double v);

// Write via temp file + rename in the target directory; no partial outputs.
void atomic_write_file(const std::string& path, const std::string& content);

// Matrix CSV layout (shared by scans and joint spectra):
//   row 1:    ,idler_1,idler_2,...        (axis in nm)
//   row k>1:  signal_k,cell,cell,...      (axis value, then one cell per idler)
// Real cells are plain numbers; complex cells are quoted "re,im" pairs.
// UTF-8, LF line endings.
struct MatrixCsv {
    std::vector<double> axis1_nm;  // signal, rows
    std::vector<double> axis2_nm;  // idler, columns
    std::vector<double> re;        // row-major
    std::vector<double> im;        // empty for real matrices
};

std::string matrix_csv_text(const std::vector<double>& axis1_nm,
                            const std::vector<double>& axis2_nm, const std::vector<double>& re,
                            const std::vector<double>* im = nullptr);
MatrixCsv parse_matrix_csv(const std::string& text);
MatrixCsv read_matrix_csv(const std::string& path);

// Column-oriented CSV for 1-D curves: header row of names, then rows.
std::string curve_csv_text(const std::vector<std::string>& names,
                           const std::vector<const std::vector<double>*>& columns);
struct CurveCsv {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};
CurveCsv read_curve_csv(const std::string& path);

// JointSpectrum <-> CSV + JSON sidecar ("<base>.csv", "<base>.json").
void write_jsa(const std::string& base_path, const JointSpectrum& js,
               const std::string& provenance);
JointSpectrum read_jsa(const std::string& base_path);

// ScanResult -> CSV matrix (2-D) or curve CSV (1-D) + JSON metadata sidecar.
void write_scan(const std::string& base_path, const ScanResult& result,
                const std::string& config_echo_json);

}  // namespace qpm::io
