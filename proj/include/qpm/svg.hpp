#pragma once

#include <string>
#include <vector>

namespace qpm::io {

// Self-contained SVG heatmap: linear color map, axes labeled in nm.
// Grids larger than 256 per side are block-averaged down for a bounded
// file size.
std::string heatmap_svg(const std::vector<double>& axis1_nm, const std::vector<double>& axis2_nm,
                        const std::vector<double>& values, const std::string& title);

// Polyline plot of one or more named curves against wavelength; log_y draws
// log10 of the (positive) values.
std::string curve_svg(const std::vector<double>& x_nm,
                      const std::vector<const std::vector<double>*>& ys,
                      const std::vector<std::string>& names, const std::string& title,
                      bool log_y = false);

}  // namespace qpm::io
