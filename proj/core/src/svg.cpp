#include "irlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "irlab/errors.hpp"

namespace irlab {

namespace {

constexpr double kWidth = 900.0, kHeight = 540.0;
constexpr double kLeft = 80.0, kRight = 40.0, kTop = 50.0, kBottom = 70.0;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void emit_svg(const SvgPlot& plot, const std::string& path) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  auto note_x = [&](double x) {
    if (plot.log_x && x <= 0.0) return;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
  };
  for (const SvgSeries& s : plot.series) {
    for (double x : s.x) note_x(x);
    for (double y : s.y) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  for (const SvgWindow& w : plot.windows) {
    note_x(w.x0);
    note_x(w.x1);
  }
  if (!(x_min < x_max)) {
    x_min = plot.log_x ? 1.0 : 0.0;
    x_max = x_min + 1.0;
  }
  if (!(y_min < y_max)) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto tx = [&](double x) {
    double t;
    if (plot.log_x) {
      t = (std::log10(std::max(x, x_min)) - std::log10(x_min)) /
          (std::log10(x_max) - std::log10(x_min));
    } else {
      t = (x - x_min) / (x_max - x_min);
    }
    return kLeft + std::clamp(t, 0.0, 1.0) * pw;
  };
  auto ty = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        "font-family=\"sans-serif\">" << escape(plot.title) << "</text>\n";

  // Window shading first so curves draw on top.
  const char* shades[] = {"#ffd9b3", "#c6e2ff", "#d5f5d5", "#f0d5f5"};
  for (std::size_t i = 0; i < plot.windows.size(); ++i) {
    const SvgWindow& w = plot.windows[i];
    if (!(w.x1 > w.x0)) continue;
    const double px0 = tx(w.x0), px1 = tx(w.x1);
    os << "<rect x=\"" << num(px0) << "\" y=\"" << kTop << "\" width=\"" << num(px1 - px0)
       << "\" height=\"" << ph << "\" fill=\"" << shades[i % 4] << "\" fill-opacity=\"0.5\"/>\n";
    os << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << kTop + 16
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
       << escape(w.label) << "</text>\n";
  }

  // Axes.
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
     << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
     << kTop + ph << "\" stroke=\"black\"/>\n";

  // X ticks.
  std::vector<double> xticks;
  if (plot.log_x) {
    for (int d = static_cast<int>(std::floor(std::log10(x_min)));
         d <= static_cast<int>(std::ceil(std::log10(x_max))); ++d)
      xticks.push_back(std::pow(10.0, d));
  } else {
    for (int i = 0; i <= 5; ++i) xticks.push_back(x_min + (x_max - x_min) * i / 5.0);
  }
  for (double t : xticks) {
    if (t < x_min || t > x_max) continue;
    const double px = tx(t);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px)
       << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << kTop + ph + 20
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(t)
       << "</text>\n";
  }
  // Y ticks.
  for (int i = 0; i <= 5; ++i) {
    const double v = y_min + (y_max - y_min) * i / 5.0;
    const double py = ty(v);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << kLeft
       << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(v)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 18
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
     << escape(plot.x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << kTop + ph / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 20 "
     << kTop + ph / 2 << ")\">" << escape(plot.y_label) << "</text>\n";

  // Series.
  for (const SvgSeries& s : plot.series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (plot.log_x && s.x[i] <= 0.0) continue;
      os << num(tx(s.x[i])) << ',' << num(ty(s.y[i])) << ' ';
    }
    os << "\"/>\n";
  }
  // Legend.
  double ly = kTop + 14;
  for (const SvgSeries& s : plot.series) {
    os << "<line x1=\"" << kLeft + pw - 150 << "\" y1=\"" << num(ly) << "\" x2=\""
       << kLeft + pw - 125 << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw - 118 << "\" y=\"" << num(ly + 4)
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << escape(s.label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("emit_svg: cannot open " + path);
  f << os.str();
  if (!f) throw IoError("emit_svg: write failed for " + path);
}

}  // namespace irlab
