#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qpm/dispersion.hpp"

namespace qpm {

// Interpolated intensity along the energy-conserving anti-diagonal
// 1/lambda_s + 1/lambda_i = 1/lambda_p of a 2-D scan.
struct CrossSection {
    std::vector<double> lambda_s_nm;
    std::vector<double> intensity;
};

// matrix is row-major [axis1][axis2] (signal rows, idler columns), axes in nm.
CrossSection anticorrelated_cross_section(const std::vector<double>& axis1_nm,
                                          const std::vector<double>& axis2_nm,
                                          const std::vector<double>& matrix,
                                          double pump_wavelength_nm);

enum class FitParam { PolingPeriod, Length, Duty };

const char* fit_param_name(FitParam p);

struct ParamBounds {
    double lo = 0.0;
    double hi = 0.0;
};

struct FitObservation {
    enum class Geometry {
        CrossSection,  // 1-D: lambda1 = signal, idler from 1/l_i = 1/l_p - 1/l_s
        Diagonal,      // 1-D: omega_1 = omega_2 (SHG sweep)
        Grid2D,        // full scan matrix
    };
    Geometry geometry = Geometry::CrossSection;
    double pump_nm = 0.0;             // CrossSection only
    std::vector<double> lambda1_nm;   // curve x, or 2-D signal axis
    std::vector<double> lambda2_nm;   // 2-D idler axis
    std::vector<double> intensity;    // curve or row-major matrix, >= 0, finite
};

struct FitProblem {
    enum class Model { UniformSinc, DomainResolved };

    FitObservation obs;
    CrystalSpec base;   // fixed: QPM order, polarizations, Sellmeier, grating sign
    Model model = Model::UniformSinc;
    std::map<FitParam, ParamBounds> free;  // >= 1 entry; finite bounds
    bool fit_background = true;  // constant background solved in closed form
    std::size_t starts_per_param = 5;
    std::size_t max_evaluations = 100000;
    double tolerance = 1e-10;

    void validate() const;
};

struct FitResult {
    std::map<FitParam, double> values;
    double scale = 1.0;
    double background = 0.0;
    double residual = 0.0;  // sum of squared residuals on peak-normalized data
    std::size_t evaluations = 0;
    bool converged = false;
    std::map<FitParam, double> sensitivity;  // d2(SSR)/dp2 at the optimum

    CrystalSpec apply_to(const CrystalSpec& base) const;
};

// Separable nonlinear least squares: shape parameters by multi-start
// Nelder-Mead within bounds (coarse grid of starts_per_param points per
// axis), amplitude scale and background by exact linear solve inside the
// objective.  Observations are peak-normalized before fitting.
FitResult fit_crystal(const FitProblem& problem);

// Deterministic plain-text summary.
std::string fit_report(const FitResult& result);

}  // namespace qpm
