#pragma once

#include <string>
#include <vector>

namespace snse {

// Dependency-free SVG line plots. Enough for the two standard figures
// (energy trace, tail mass vs Markov envelope); not a plotting library.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series, bool log_x = false,
                    bool log_y = false);

}  // namespace snse
