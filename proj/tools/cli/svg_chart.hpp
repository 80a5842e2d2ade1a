#pragma once

#include <string>
#include <vector>

namespace lexlab::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static polyline chart with axes, ticks and a legend.
struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_y = false;  // non-positive values are dropped on a log axis
  int width = 720;
  int height = 440;

  std::string render() const;
};

}  // namespace lexlab::cli
