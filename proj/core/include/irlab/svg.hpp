#pragma once

#include <string>
#include <vector>

namespace irlab {

// Self-contained SVG line plot: multiple series, optional log-scale x axis,
// axis labels, and shaded [x0, x1] window rectangles.
struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgWindow {
  std::string label;
  double x0 = 0.0;
  double x1 = 0.0;
};

struct SvgPlot {
  std::string title;
  std::string x_label = "iteration";
  std::string y_label;
  bool log_x = true;
  std::vector<SvgSeries> series;
  std::vector<SvgWindow> windows;
};

void emit_svg(const SvgPlot& plot, const std::string& path);  // IoError on failure

}  // namespace irlab
