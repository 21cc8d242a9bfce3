#pragma once

// Minimal SVG line-chart writer for outage curves.

#include <iosfwd>
#include <string>
#include <vector>

namespace cellout::harness {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f4e9c";
    bool dotted = false;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 640;
    int height = 420;

    /// Axis ranges are taken from the data; y is fixed to [0, 1] when
    /// `unit_y` is set.
    bool unit_y = true;

    void write(std::ostream& os) const;
};

}  // namespace cellout::harness
