// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_SVG_HPP
#define PHOTOSTAT_SVG_HPP

#include <string>
#include <vector>

namespace photostat {

struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color;     // empty selects from the default palette
    bool scatter = false;  // points instead of a polyline
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 800;
    int height = 520;
};

/// Minimal self-contained plot writer. Output contains no timestamps or
/// environment-dependent fields, so identical data gives identical
/// files. Non-positive values are dropped on logarithmic axes.
void write_svg_plot(const std::string& path,
                    const std::vector<PlotSeries>& series,
                    const PlotOptions& options);

}  // namespace photostat

#endif
