#pragma once

#include <string>
#include <utility>
#include <vector>

namespace monowave::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool markers = true;  // otherwise a plain polyline
  std::string color = "#1f77b4";
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Standalone SVG: frame, five ticks per axis, one polyline per series and a
/// legend. Points that cannot be placed on a log axis are dropped.
std::string render_svg(const Plot& plot);

}  // namespace monowave::cli
