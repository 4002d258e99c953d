#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cforge::svg {

struct Series {
  enum class Style { Line, Markers };
  std::string label;
  std::string color = "#1f77b4";
  Style style = Style::Line;
  std::vector<std::pair<double, double>> points;
};

/// Shaded interval [lo, hi] at each x.
struct Band {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Band> bands;
  std::vector<Series> series;
};

/// Standalone SVG document with axes, ticks and a legend.
std::string render(const Chart& chart, int width = 640, int height = 400);

}  // namespace cforge::svg
