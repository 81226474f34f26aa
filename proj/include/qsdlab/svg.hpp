#pragma once

#include <string>
#include <vector>

namespace qsdlab {

/// One curve of a line plot.
struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Best-effort single-file SVG line plot (CSV remains the normative output).
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, const std::string& x_label = "t",
                    const std::string& y_label = "");

}  // namespace qsdlab
