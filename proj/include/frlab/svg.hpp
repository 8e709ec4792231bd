#pragma once

#include <string>
#include <vector>

namespace frlab {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal line plot: framed axes, auto-scaled, fixed palette. Non-finite
// samples break the polyline.
std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series,
                          bool log_x = false, bool log_y = false);

// Heatmap over a rectangular grid; values(i, j) keyed by (x_i, y_j) order,
// row-major with y fastest. NaN cells render gray.
std::string svg_heatmap(const std::string& title,
                        const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& values);

}  // namespace frlab
