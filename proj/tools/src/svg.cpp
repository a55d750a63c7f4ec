#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace monowave::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tick_label(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool admits(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

}  // namespace

std::string render_svg(const Plot& plot) {
  Axis ax{plot.log_x}, ay{plot.log_y};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Series& s : plot.series) {
    for (const auto& [x, y] : s.points) {
      if (!ax.admits(x) || !ay.admits(y)) continue;
      x0 = std::min(x0, ax.transform(x));
      x1 = std::max(x1, ax.transform(x));
      y0 = std::min(y0, ay.transform(y));
      y1 = std::max(y1, ay.transform(y));
    }
  }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0;
  if (!(y0 <= y1)) y0 = 0.0, y1 = 1.0;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad_x = 0.05 * (x1 - x0), pad_y = 0.05 * (y1 - y0);
  ax.lo = x0 - pad_x, ax.hi = x1 + pad_x;
  ay.lo = y0 - pad_y, ay.hi = y1 + pad_y;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double t) { return kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
                    "\" height=\"" + fixed(kHeight, 0) + "\" font-family=\"sans-serif\" " +
                    "font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(plot.title) + "</text>\n";
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) +
         "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double tx = ax.lo + (ax.hi - ax.lo) * k / 4.0;
    const double ty = ay.lo + (ay.hi - ay.lo) * k / 4.0;
    const double vx = ax.log ? std::pow(10.0, tx) : tx;
    const double vy = ay.log ? std::pow(10.0, ty) : ty;
    svg += "<line x1=\"" + fixed(px(tx)) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" +
           fixed(px(tx)) + "\" y2=\"" + fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(px(tx)) + "\" y=\"" + fixed(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + tick_label(vx) + "</text>\n";
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py(ty)) + "\" x2=\"" +
           fixed(kLeft) + "\" y2=\"" + fixed(py(ty)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(ty) + 4) +
           "\" text-anchor=\"end\">" + tick_label(vy) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 16) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fixed(kTop + ph / 2) + "\" text-anchor=\"middle\" " +
         "transform=\"rotate(-90 16 " + fixed(kTop + ph / 2) + ")\">" + escape(plot.y_label) +
         "</text>\n";

  double legend_y = kTop + 16;
  for (const Series& s : plot.series) {
    std::string pts;
    std::string dots;
    for (const auto& [x, y] : s.points) {
      if (!ax.admits(x) || !ay.admits(y)) continue;
      const std::string cx = fixed(px(ax.transform(x))), cy = fixed(py(ay.transform(y)));
      if (!pts.empty()) pts += ' ';
      pts += cx + "," + cy;
      if (s.markers) {
        dots += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
      }
    }
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n" + dots;
    svg += "<line x1=\"" + fixed(kLeft + 10) + "\" y1=\"" + fixed(legend_y - 4) + "\" x2=\"" +
           fixed(kLeft + 30) + "\" y2=\"" + fixed(legend_y - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(kLeft + 36) + "\" y=\"" + fixed(legend_y) + "\">" +
           escape(s.label) + "</text>\n";
    legend_y += 16;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace monowave::cli
