#include "cellout/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace cellout::harness {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

}  // namespace

void LineChart::write(std::ostream& os) const {
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = unit_y ? 0.0 : x0;
    double y1 = unit_y ? 1.0 : -x0;
    for (const auto& s : series) {
        for (double v : s.x) {
            if (std::isfinite(v)) {
                x0 = std::min(x0, v);
                x1 = std::max(x1, v);
            }
        }
        if (!unit_y) {
            for (double v : s.y) {
                if (std::isfinite(v)) {
                    y0 = std::min(y0, v);
                    y1 = std::max(y1, v);
                }
            }
        }
    }
    if (!(x1 > x0)) {
        x0 = std::isfinite(x0) ? x0 - 1.0 : 0.0;
        x1 = x0 + 2.0;
    }
    if (!(y1 > y0)) {
        y0 = std::isfinite(y0) ? y0 - 1.0 : 0.0;
        y1 = y0 + 2.0;
    }

    const double left = 64, right = 16, top = 36, bottom = 48;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title) << "</text>\n";

    const double xs = nice_step(x1 - x0, 8);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        os << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(top) << "\" x2=\""
           << fixed(px(t)) << "\" y2=\"" << fixed(top + ph) << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(top + ph + 16)
           << "\" text-anchor=\"middle\">" << fixed(t, xs < 1.0 ? 1 : 0) << "</text>\n";
    }
    const double ys = nice_step(y1 - y0, 5);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(t)) << "\" x2=\""
           << fixed(left + pw) << "\" y2=\"" << fixed(py(t)) << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(t) + 4)
           << "\" text-anchor=\"end\">" << fixed(t, ys < 1.0 ? 1 : 0) << "</text>\n";
    }
    os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw)
       << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << height - 10
       << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << fixed(top + ph / 2)
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dotted) {
            os << " stroke-dasharray=\"2,3\"";
        }
        os << " points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                os << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i])) << ' ';
            }
        }
        os << "\"/>\n";
        const double ly = top + 14 + 16 * legend_row++;
        os << "<line x1=\"" << fixed(left + 10) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\""
           << fixed(left + 34) << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << s.color
           << "\" stroke-width=\"1.5\"" << (s.dotted ? " stroke-dasharray=\"2,3\"" : "")
           << "/>\n";
        os << "<text x=\"" << fixed(left + 40) << "\" y=\"" << fixed(ly) << "\">"
           << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace cellout::harness
