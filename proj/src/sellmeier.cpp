#include "qpm/sellmeier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qpm/error.hpp"

namespace qpm {

const char* axis_name(Axis a) { return a == Axis::Y ? "Y" : "Z"; }

Axis axis_from_name(const std::string& s) {
    if (s == "Y" || s == "y") return Axis::Y;
    if (s == "Z" || s == "z") return Axis::Z;
    throw ConfigError("unknown crystal axis '" + s + "' (expected Y or Z)");
}

void SellmeierSet::check_range(double lambda_um) const {
    // A hair of slack absorbs round-trip conversion noise at the boundaries.
    const double slack = 1e-12 * lambda_min_um;
    if (!(lambda_um >= lambda_min_um - slack && lambda_um <= lambda_max_um + slack)) {
        std::ostringstream os;
        os << "wavelength " << lambda_um << " um outside Sellmeier validity ["
           << lambda_min_um << ", " << lambda_max_um << "] um for axis "
           << axis_name(axis);
        throw RangeError(os.str());
    }
}

double SellmeierSet::index(double lambda_um) const {
    check_range(lambda_um);
    const double l2 = lambda_um * lambda_um;
    double n2 = A - D * l2;
    for (const Term& t : terms) n2 += t.B * l2 / (l2 - t.C);
    return std::sqrt(n2);
}

double SellmeierSet::index_derivative(double lambda_um) const {
    check_range(lambda_um);
    const double l2 = lambda_um * lambda_um;
    // d(n^2)/d(l2); the B l2/(l2-C) term differentiates to -B C/(l2-C)^2.
    double dn2_dl2 = -D;
    for (const Term& t : terms) {
        const double d = l2 - t.C;
        dn2_dl2 -= t.B * t.C / (d * d);
    }
    double n2 = A - D * l2;
    for (const Term& t : terms) n2 += t.B * l2 / (l2 - t.C);
    return lambda_um * dn2_dl2 / std::sqrt(n2);
}

SellmeierSet SellmeierSet::constant(double n, Axis axis, double lo_um, double hi_um) {
    SellmeierSet s;
    s.axis = axis;
    s.A = n * n;
    s.lambda_min_um = lo_um;
    s.lambda_max_um = hi_um;
    s.source = "constant-index stub";
    return s;
}

namespace {

SellmeierSet parse_axis_record(const nlohmann::json& j, Axis axis) {
    SellmeierSet s;
    s.axis = axis;
    s.A = j.at("A").get<double>();
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms"))
            s.terms.push_back({t.at("B").get<double>(), t.at("C").get<double>()});
    }
    s.D = j.value("D", 0.0);
    const auto& r = j.at("valid_range_um");
    s.lambda_min_um = r.at(0).get<double>();
    s.lambda_max_um = r.at(1).get<double>();
    s.source = j.value("source", "");
    if (!(s.lambda_min_um > 0.0) || !(s.lambda_max_um > s.lambda_min_um))
        throw ConfigError("Sellmeier record: invalid valid_range_um");
    // Reject sets that go complex or below vacuum index anywhere in range.
    for (int i = 0; i <= 64; ++i) {
        double lam = s.lambda_min_um + (s.lambda_max_um - s.lambda_min_um) * i / 64.0;
        const double l2 = lam * lam;
        double n2 = s.A - s.D * l2;
        for (const auto& t : s.terms) n2 += t.B * l2 / (l2 - t.C);
        if (!(n2 > 1.0))
            throw ConfigError(std::string("Sellmeier record for axis ") + axis_name(axis) +
                              " yields n <= 1 inside its declared valid range");
    }
    return s;
}

}  // namespace

SellmeierData parse_sellmeier_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("Sellmeier file is not valid JSON: ") + e.what());
    }
    try {
        SellmeierData d;
        d.material = j.value("material", "");
        d.provenance = j.value("provenance", "");
        d.y = parse_axis_record(j.at("axes").at("Y"), Axis::Y);
        d.z = parse_axis_record(j.at("axes").at("Z"), Axis::Z);
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("Sellmeier file: missing or malformed field: ") + e.what());
    }
}

SellmeierData load_sellmeier_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open Sellmeier file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sellmeier_json(ss.str());
}

}  // namespace qpm
