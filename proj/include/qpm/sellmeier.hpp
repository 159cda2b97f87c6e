#pragma once

#include <string>
#include <vector>

namespace qpm {

enum class Axis { Y, Z };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& s);

// Dispersion data for one crystallographic axis:
//
//   n^2(lambda) = A + sum_j B_j * lambda^2 / (lambda^2 - C_j) - D * lambda^2
//
// with lambda the vacuum wavelength in um.  Evaluation outside
// [lambda_min_um, lambda_max_um] throws RangeError.
struct SellmeierSet {
    Axis axis = Axis::Y;
    double A = 1.0;
    struct Term {
        double B = 0.0;
        double C = 0.0;  // um^2
    };
    std::vector<Term> terms;
    double D = 0.0;  // um^-2
    double lambda_min_um = 0.0;
    double lambda_max_um = 0.0;
    std::string source;  // provenance string from the data file

    void check_range(double lambda_um) const;

    // n(lambda); real, > 1 over the validity window of any physical set.
    double index(double lambda_um) const;

    // dn/dlambda in um^-1, from the closed-form derivative of the formula.
    double index_derivative(double lambda_um) const;

    // Constant-index stub (dispersionless), handy in tests.
    static SellmeierSet constant(double n, Axis axis = Axis::Y,
                                 double lo_um = 0.1, double hi_um = 20.0);
};

// Sellmeier data file: one record per axis, provenance required.
struct SellmeierData {
    SellmeierSet y;
    SellmeierSet z;
    std::string material;
    std::string provenance;

    const SellmeierSet& for_axis(Axis a) const { return a == Axis::Y ? y : z; }
};

SellmeierData load_sellmeier_file(const std::string& path);
SellmeierData parse_sellmeier_json(const std::string& text);

}  // namespace qpm
