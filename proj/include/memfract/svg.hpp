#pragma once

#include <string>
#include <vector>

namespace memfract {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // NaN breaks the line
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string header_comment;  // emitted as an XML comment
  int width = 720;
  int height = 440;
};

/// Standalone SVG line plot. Output depends only on the inputs.
std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& opts);

}  // namespace memfract
