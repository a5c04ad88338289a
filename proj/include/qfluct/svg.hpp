#pragma once

// Minimal static line plots: fixed 800x500 viewport, linear axes, numeric
// tick labels, one polyline per series.

#include <ostream>
#include <string>
#include <vector>

namespace qfluct::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 500;

void write(std::ostream& os, const Plot& plot);

}  // namespace qfluct::svg
