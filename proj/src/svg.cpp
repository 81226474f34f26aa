#include "qsdlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qsdlab/csv.hpp"
#include "qsdlab/errors.hpp"

namespace qsdlab {

namespace {
const char* kPalette[] = {"#c0392b", "#2471a3", "#229954", "#af7ac5", "#d68910", "#17a589"};
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, const std::string& x_label,
                    const std::string& y_label) {
    const double W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_svg_plot: cannot open " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";

    // axes with a few ticks
    f << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5, yv = ymin + (ymax - ymin) * i / 5;
        f << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv) << "\" y2=\""
          << H - mb + 5 << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
          << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(std::round(xv * 1e4) / 1e4)
          << "</text>\n"
          << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
          << py(yv) << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
          << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(std::round(yv * 1e4) / 1e4)
          << "</text>\n";
    }
    f << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    if (!y_label.empty())
        f << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
          << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
          << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const auto& sr = series[s];
        // subsample long curves; the CSV carries the full data
        const std::size_t stride = std::max<std::size_t>(1, sr.x.size() / 2000);
        for (std::size_t i = 0; i < sr.x.size(); i += stride)
            f << px(sr.x[i]) << "," << py(sr.y[i]) << " ";
        if (!sr.x.empty()) f << px(sr.x.back()) << "," << py(sr.y.back());
        f << "\"/>\n";
        f << "<text x=\"" << W - mr - 10 << "\" y=\"" << mt + 18 * (s + 1)
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << sr.label
          << "</text>\n";
    }
    f << "</svg>\n";
}

}  // namespace qsdlab
