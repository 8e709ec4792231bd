#include "frlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frlab {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 480;
constexpr int kMargin = 56;

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a8f5f",
                          "#8d6fb8", "#c98a2b", "#4f4f4f"};

struct Range {
    double lo = std::numeric_limits<double>::max();
    double hi = -std::numeric_limits<double>::max();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

double map_coord(double v, const Range& r, double out_lo, double out_hi,
                 bool log_scale) {
    double lo = r.lo, hi = r.hi, x = v;
    if (log_scale) {
        lo = std::log10(lo);
        hi = std::log10(hi);
        x = std::log10(v);
    }
    return out_lo + (x - lo) / (hi - lo) * (out_hi - out_lo);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void frame(std::ostringstream& out, const std::string& title) {
    out << "<rect x='0' y='0' width='" << kWidth << "' height='" << kHeight
        << "' fill='white'/>\n"
        << "<rect x='" << kMargin << "' y='" << kMargin << "' width='"
        << kWidth - 2 * kMargin << "' height='" << kHeight - 2 * kMargin
        << "' fill='none' stroke='#333'/>\n"
        << "<text x='" << kWidth / 2 << "' y='" << kMargin - 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='15'>"
        << title << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series, bool log_x,
                          bool log_y) {
    Range rx, ry;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (log_x && !(s.x[i] > 0.0)) continue;
            if (log_y && !(s.y[i] > 0.0)) continue;
            rx.add(s.x[i]);
            ry.add(s.y[i]);
        }
    rx.pad();
    ry.pad();

    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n";
    frame(out, title);
    out << "<text x='" << kMargin << "' y='" << kHeight - kMargin + 28
        << "' font-family='sans-serif' font-size='12'>x: [" << fmt(rx.lo)
        << ", " << fmt(rx.hi) << (log_x ? "] log" : "]") << "  y: ["
        << fmt(ry.lo) << ", " << fmt(ry.hi) << (log_y ? "] log" : "]")
        << "</text>\n";

    int color = 0;
    for (const auto& s : series) {
        const char* stroke = kPalette[color % 6];
        out << "<polyline fill='none' stroke='" << stroke
            << "' stroke-width='1.5' points='";
        bool broken = true;
        for (size_t i = 0; i < s.x.size(); ++i) {
            bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]) &&
                      (!log_x || s.x[i] > 0.0) && (!log_y || s.y[i] > 0.0);
            if (!ok) {
                if (!broken) {
                    out << "' /><polyline fill='none' stroke='" << stroke
                        << "' stroke-width='1.5' points='";
                    broken = true;
                }
                continue;
            }
            double px = map_coord(s.x[i], rx, kMargin, kWidth - kMargin, log_x);
            double py =
                map_coord(s.y[i], ry, kHeight - kMargin, kMargin, log_y);
            out << fmt(px) << ',' << fmt(py) << ' ';
            broken = false;
        }
        out << "'/>\n";
        out << "<text x='" << kWidth - kMargin - 150 << "' y='"
            << kMargin + 18 + 16 * color << "' font-family='sans-serif' "
            << "font-size='12' fill='" << stroke << "'>" << s.label
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_heatmap(const std::string& title, const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& values) {
    const size_t nx = x.size(), ny = y.size();
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n";
    frame(out, title);
    Range rv;
    for (double v : values) rv.add(v);
    rv.pad();

    const double cell_w = (kWidth - 2.0 * kMargin) / nx;
    const double cell_h = (kHeight - 2.0 * kMargin) / ny;
    for (size_t i = 0; i < nx; ++i) {
        for (size_t j = 0; j < ny; ++j) {
            double v = values[i * ny + j];
            std::string fill = "#bbbbbb";
            if (std::isfinite(v)) {
                double t = (v - rv.lo) / (rv.hi - rv.lo);
                int r = static_cast<int>(40 + 215 * t);
                int b = static_cast<int>(255 - 215 * t);
                std::ostringstream c;
                c << "rgb(" << r << ",60," << b << ")";
                fill = c.str();
            }
            out << "<rect x='" << fmt(kMargin + i * cell_w) << "' y='"
                << fmt(kHeight - kMargin - (j + 1) * cell_h) << "' width='"
                << fmt(cell_w + 0.5) << "' height='" << fmt(cell_h + 0.5)
                << "' fill='" << fill << "'/>\n";
        }
    }
    out << "<text x='" << kMargin << "' y='" << kHeight - kMargin + 28
        << "' font-family='sans-serif' font-size='12'>x: [" << fmt(x.front())
        << ", " << fmt(x.back()) << "]  y: [" << fmt(y.front()) << ", "
        << fmt(y.back()) << "]  v: [" << fmt(rv.lo) << ", " << fmt(rv.hi)
        << "]</text>\n</svg>\n";
    return out.str();
}

}  // namespace frlab
