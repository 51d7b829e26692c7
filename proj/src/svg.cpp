// SPDX-License-Identifier: Apache-2.0
#include "photostat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace photostat {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#ff7f0e",
                                    "#2ca02c", "#9467bd", "#8c564b"};
constexpr int kPaletteSize = 6;

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double to_unit(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return (x - a) / (b - a);
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 0.5 * step; t += step) {
        ticks.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int d_lo = static_cast<int>(std::floor(std::log10(lo)));
    const int d_hi = static_cast<int>(std::ceil(std::log10(hi)));
    const int stride = std::max(1, (d_hi - d_lo) / 8);
    for (int d = d_lo; d <= d_hi; d += stride) {
        const double t = std::pow(10.0, d);
        if (t >= lo * 0.999 && t <= hi * 1.001) ticks.push_back(t);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

}  // namespace

void write_svg_plot(const std::string& path,
                    const std::vector<PlotSeries>& series,
                    const PlotOptions& options) {
    if (series.empty()) throw std::invalid_argument("no series to plot");

    Axis xa, ya;
    xa.log = options.log_x;
    ya.log = options.log_y;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("series x/y length mismatch");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (options.log_x && !(s.x[i] > 0.0)) continue;
            if (options.log_y && !(s.y[i] > 0.0)) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!(x_lo <= x_hi) || !(y_lo <= y_hi)) {
        throw std::invalid_argument("no plottable points");
    }
    if (x_lo == x_hi) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_lo == y_hi) {
        y_lo = options.log_y ? y_lo * 0.5 : y_lo - 0.5;
        y_hi = options.log_y ? y_hi * 2.0 : y_hi + 0.5;
    }
    if (!options.log_x) {
        const double pad = 0.03 * (x_hi - x_lo);
        x_lo -= pad;
        x_hi += pad;
    }
    if (!options.log_y) {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }
    xa.lo = x_lo;
    xa.hi = x_hi;
    ya.lo = y_lo;
    ya.hi = y_hi;

    const double ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = options.width - ml - mr;
    const double ph = options.height - mt - mb;
    const auto px = [&](double v) { return ml + pw * xa.to_unit(v); };
    const auto py = [&](double v) { return mt + ph * (1.0 - ya.to_unit(v)); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
        << options.width << " " << options.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << options.width / 2 << "\" y=\"24\" font-size=\"16\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\">"
        << escape(options.title) << "</text>\n";

    const auto x_ticks =
        options.log_x ? log_ticks(xa.lo, xa.hi) : linear_ticks(xa.lo, xa.hi);
    const auto y_ticks =
        options.log_y ? log_ticks(ya.lo, ya.hi) : linear_ticks(ya.lo, ya.hi);
    for (double t : x_ticks) {
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << mt << "\" x2=\""
            << num(x) << "\" y2=\"" << mt + ph
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << mt + ph + 18
            << "\" font-size=\"11\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\">" << num(t) << "</text>\n";
    }
    for (double t : y_ticks) {
        const double y = py(t);
        out << "<line x1=\"" << ml << "\" y1=\"" << num(y) << "\" x2=\""
            << ml + pw << "\" y2=\"" << num(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << num(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\" "
            << "font-family=\"sans-serif\">" << num(t) << "</text>\n";
    }
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << options.height - 12
        << "\" font-size=\"13\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\">" << escape(options.x_label)
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
        << mt + ph / 2 << ")\">" << escape(options.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const std::string color =
            s.color.empty() ? kPalette[si % kPaletteSize] : s.color;
        if (s.scatter) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (options.log_x && !(s.x[i] > 0.0)) continue;
                if (options.log_y && !(s.y[i] > 0.0)) continue;
                out << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\""
                    << num(py(s.y[i])) << "\" r=\"2.5\" fill=\"" << color
                    << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (options.log_x && !(s.x[i] > 0.0)) continue;
                if (options.log_y && !(s.y[i] > 0.0)) continue;
                if (!first) out << " ";
                out << num(px(s.x[i])) << "," << num(py(s.y[i]));
                first = false;
            }
            out << "\"/>\n";
        }
        const double ly = mt + 16 + 16 * static_cast<double>(si);
        out << "<rect x=\"" << ml + pw - 150 << "\" y=\"" << num(ly - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << ml + pw - 133 << "\" y=\"" << num(ly + 2)
            << "\" font-size=\"11\" font-family=\"sans-serif\">"
            << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace photostat
