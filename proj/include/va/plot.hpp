#pragma once

#include <optional>
#include <string>
#include <vector>

#include "va/image.hpp"

namespace va {

struct PlotColor {
  float r = 0.f, g = 0.f, b = 0.f;
};

struct ScatterSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  PlotColor color;
};

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;
  PlotColor color{0.85f, 0.25f, 0.2f};
};

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  bool log10 = false;  // positions are log10(value); tick labels show raw values
};

// Scatter with optional least-squares line.  Tick labels are numeric only;
// series/axis names belong in the companion data table.
Image render_scatter(const std::vector<ScatterSeries>& series, const std::optional<FitLine>& fit,
                     AxisSpec x_axis, AxisSpec y_axis, int width = 640, int height = 440);

struct BarDatum {
  std::string label;
  double value = 0.0;
  std::optional<double> err;  // +/- whisker
  PlotColor color;
};

Image render_bars(const std::vector<BarDatum>& bars, double y_hi, int width = 480, int height = 400);

}  // namespace va
