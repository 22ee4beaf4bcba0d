#include "snse/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "snse/errors.hpp"

namespace snse {

namespace {

constexpr double kWidth = 860.0, kHeight = 460.0;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[6] = {"#1f6fb5", "#d1495b", "#3a8f5d",
                           "#8f5ab8", "#c98a1f", "#4a4a4a"};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

double tx(double v, bool logscale) {
    return logscale ? std::log10(v) : v;
}

}  // namespace

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series, bool log_x, bool log_y) {
    // Transformed bounds over finite (and, on log axes, positive) points.
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            const double xv = s.x[i], yv = s.y[i];
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            if ((log_x && !(xv > 0.0)) || (log_y && !(yv > 0.0))) continue;
            x_lo = std::min(x_lo, tx(xv, log_x));
            x_hi = std::max(x_hi, tx(xv, log_x));
            y_lo = std::min(y_lo, tx(yv, log_y));
            y_hi = std::max(y_hi, tx(yv, log_y));
        }
    }
    if (!(x_hi >= x_lo) || !(y_hi >= y_lo))
        throw DiagnosticError("plot '" + path + "' has no drawable points");
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (tx(v, log_x) - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double v) {
        return kTop + plot_h - (tx(v, log_y) - y_lo) / (y_hi - y_lo) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw DiagnosticError("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" font-family=\"monospace\" font-size=\"13\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title
        << "</text>\n";

    // frame + grid lines at quartiles with tick labels (values are
    // de-logged back for display on log axes)
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int g = 0; g <= 4; ++g) {
        const double fx = x_lo + (x_hi - x_lo) * g / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * g / 4.0;
        const double gx = kLeft + plot_w * g / 4.0;
        const double gy = kTop + plot_h - plot_h * g / 4.0;
        if (g > 0 && g < 4) {
            out << "<line x1=\"" << gx << "\" y1=\"" << kTop << "\" x2=\"" << gx
                << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#dddddd\"/>\n";
            out << "<line x1=\"" << kLeft << "\" y1=\"" << gy << "\" x2=\""
                << kLeft + plot_w << "\" y2=\"" << gy << "\" stroke=\"#dddddd\"/>\n";
        }
        out << "<text x=\"" << gx << "\" y=\"" << kTop + plot_h + 18
            << "\" text-anchor=\"middle\">" << num(log_x ? std::pow(10.0, fx) : fx)
            << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << gy + 4
            << "\" text-anchor=\"end\">" << num(log_y ? std::pow(10.0, fy) : fy)
            << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool any = false;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            const double xv = s.x[i], yv = s.y[i];
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            if ((log_x && !(xv > 0.0)) || (log_y && !(yv > 0.0))) continue;
            out << px(xv) << "," << py(yv) << " ";
            any = true;
        }
        out << "\"/>\n";
        (void)any;
        const double ly = kTop + 16.0 + 16.0 * static_cast<double>(si);
        out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + plot_w - 125 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + plot_w - 118 << "\" y=\"" << ly + 4 << "\">"
            << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace snse
