#pragma once

// Minimal static SVG renderings: line plots, density-matrix bars and
// heatmaps.  Output is deterministic and carries no timestamps.

#include <optional>
#include <string>
#include <vector>

#include "ringmem/hilbert.hpp"

namespace ringmem::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

// Shaded x interval, e.g. a control pulse.
struct Band {
  double x0 = 0;
  double x1 = 0;
  std::string label;
};

struct HorizontalLine {
  double y = 0;
  std::string label;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::optional<double> y_min;
  std::optional<double> y_max;
  std::vector<Series> series;
  std::vector<Band> bands;
  std::vector<HorizontalLine> hlines;
};

std::string line_plot(const LinePlot& plot);

// One bar per matrix element, height proportional to the real part.
std::string matrix_bars(const Matrix& m, const std::vector<std::string>& labels,
                        const std::string& title);

// values[j * nx + i] over [x0, x1] x [y0, y1]; blue negative, red positive.
std::string heatmap(const std::vector<double>& values, int nx, int ny, double x0, double x1,
                    double y0, double y1, const std::string& title);

}  // namespace ringmem::svg
