#include "qpm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qpm/error.hpp"

namespace qpm::io {

namespace {

// Compact viridis-like map, linear in value.
struct Rgb {
    int r, g, b;
};

Rgb colormap(double t) {
    static const Rgb stops[] = {{68, 1, 84},   {71, 44, 122}, {59, 81, 139}, {44, 113, 142},
                                {33, 144, 141}, {39, 173, 129}, {92, 200, 99}, {170, 220, 50},
                                {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0);
    const double x = t * 7.999;
    const int k = std::min(7, static_cast<int>(x));
    const double f = x - k;
    auto lerp = [&](int a, int b) { return static_cast<int>(a + f * (b - a)); };
    return {lerp(stops[k].r, stops[k + 1].r), lerp(stops[k].g, stops[k + 1].g),
            lerp(stops[k].b, stops[k + 1].b)};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void axis_labels(std::ostringstream& os, double x0, double y0, double w, double h, double lo1,
                 double hi1, double lo2, double hi2, const std::string& xlab,
                 const std::string& ylab) {
    os << "<text x='" << x0 + w / 2 << "' y='" << y0 + h + 34
       << "' text-anchor='middle' font-size='12'>" << xlab << "</text>\n";
    os << "<text x='" << x0 - 42 << "' y='" << y0 + h / 2 << "' text-anchor='middle' font-size='12'"
       << " transform='rotate(-90 " << x0 - 42 << ' ' << y0 + h / 2 << ")'>" << ylab
       << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double tx = x0 + w * k / 4.0;
        const double vx = lo2 + (hi2 - lo2) * k / 4.0;
        os << "<text x='" << tx << "' y='" << y0 + h + 16
           << "' text-anchor='middle' font-size='10'>" << fmt(vx) << "</text>\n";
        const double ty = y0 + h - h * k / 4.0;
        const double vy = lo1 + (hi1 - lo1) * k / 4.0;
        os << "<text x='" << x0 - 6 << "' y='" << ty + 3
           << "' text-anchor='end' font-size='10'>" << fmt(vy) << "</text>\n";
    }
}

}  // namespace

std::string heatmap_svg(const std::vector<double>& axis1_nm, const std::vector<double>& axis2_nm,
                        const std::vector<double>& values, const std::string& title) {
    const std::size_t n1 = axis1_nm.size(), n2 = axis2_nm.size();
    if (values.size() != n1 * n2) throw ConfigError("heatmap: size mismatch");

    // Block-average down to at most 200 cells per side.
    const std::size_t b1 = (n1 + 199) / 200, b2 = (n2 + 199) / 200;
    const std::size_t m1 = (n1 + b1 - 1) / b1, m2 = (n2 + b2 - 1) / b2;
    std::vector<double> cells(m1 * m2, 0.0);
    std::vector<int> counts(m1 * m2, 0);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            const std::size_t k = (i / b1) * m2 + (j / b2);
            cells[k] += values[i * n2 + j];
            counts[k] += 1;
        }
    double vmax = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        cells[k] /= counts[k];
        vmax = std::max(vmax, cells[k]);
    }
    if (vmax <= 0.0) vmax = 1.0;

    const double x0 = 60, y0 = 30, w = 420, h = 420;
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << x0 + w + 40 << "' height='"
       << y0 + h + 50 << "'>\n";
    os << "<text x='" << x0 + w / 2 << "' y='18' text-anchor='middle' font-size='13'>" << title
       << "</text>\n";
    const double cw = w / static_cast<double>(m2), ch = h / static_cast<double>(m1);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m2; ++j) {
            const Rgb c = colormap(cells[i * m2 + j] / vmax);
            // signal (axis1) increases upward
            const double px = x0 + cw * static_cast<double>(j);
            const double py = y0 + h - ch * static_cast<double>(i + 1);
            os << "<rect x='" << fmt(px) << "' y='" << fmt(py) << "' width='" << fmt(cw + 0.5)
               << "' height='" << fmt(ch + 0.5) << "' fill='rgb(" << c.r << ',' << c.g << ','
               << c.b << ")'/>\n";
        }
    axis_labels(os, x0, y0, w, h, axis1_nm.front(), axis1_nm.back(), axis2_nm.front(),
                axis2_nm.back(), "idler wavelength (nm)", "signal wavelength (nm)");
    os << "</svg>\n";
    return os.str();
}

std::string curve_svg(const std::vector<double>& x_nm,
                      const std::vector<const std::vector<double>*>& ys,
                      const std::vector<std::string>& names, const std::string& title,
                      bool log_y) {
    if (ys.empty() || names.size() != ys.size()) throw ConfigError("curve svg: bad inputs");
    for (const auto* y : ys)
        if (y->size() != x_nm.size()) throw ConfigError("curve svg: length mismatch");

    auto transform = [&](double v) {
        if (!log_y) return v;
        return std::log10(std::max(v, 1e-12));
    };
    double ylo = 1e300, yhi = -1e300;
    for (const auto* y : ys)
        for (double v : *y) {
            const double t = transform(v);
            ylo = std::min(ylo, t);
            yhi = std::max(yhi, t);
        }
    if (yhi <= ylo) yhi = ylo + 1.0;

    const double x0 = 60, y0 = 30, w = 560, h = 340;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << x0 + w + 120 << "' height='"
       << y0 + h + 50 << "'>\n";
    os << "<text x='" << x0 + w / 2 << "' y='18' text-anchor='middle' font-size='13'>" << title
       << "</text>\n";
    os << "<rect x='" << x0 << "' y='" << y0 << "' width='" << w << "' height='" << h
       << "' fill='none' stroke='#888'/>\n";
    for (std::size_t c = 0; c < ys.size(); ++c) {
        os << "<polyline fill='none' stroke='" << palette[c % 5] << "' stroke-width='1' points='";
        for (std::size_t i = 0; i < x_nm.size(); ++i) {
            const double px =
                x0 + w * (x_nm[i] - x_nm.front()) / std::max(1e-300, x_nm.back() - x_nm.front());
            const double py = y0 + h - h * (transform((*ys[c])[i]) - ylo) / (yhi - ylo);
            os << fmt(px) << ',' << fmt(py) << ' ';
        }
        os << "'/>\n";
        os << "<text x='" << x0 + w + 8 << "' y='" << y0 + 14 + 16 * static_cast<double>(c)
           << "' font-size='11' fill='" << palette[c % 5] << "'>" << names[c] << "</text>\n";
    }
    axis_labels(os, x0, y0, w, h, ylo, yhi, x_nm.front(), x_nm.back(), "wavelength (nm)",
                log_y ? "log10 intensity" : "intensity");
    os << "</svg>\n";
    return os.str();
}

}  // namespace qpm::io
