#include "ringmem/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ringmem/emit.hpp"

namespace ringmem::svg {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string f(double v) { return format_fixed(v, 2); }

std::string header(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\" font-family=\"sans-serif\" font-size=\"12\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text_at(double x, double y, const std::string& s, const char* anchor = "middle",
                    const std::string& extra = "") {
  return "<text x=\"" + f(x) + "\" y=\"" + f(y) + "\" text-anchor=\"" + anchor + "\"" + extra +
         ">" + esc(s) + "</text>\n";
}

// Tick positions for a linear axis.
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

}  // namespace

std::string line_plot(const LinePlot& plot) {
  const int W = 760, H = 460;
  const double left = 80, right = 190, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  auto xval = [&](double x) { return plot.log_x ? std::log10(x) : x; };
  auto usable_x = [&](double x) { return std::isfinite(x) && (!plot.log_x || x > 0); };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, xval(s.x[i]));
      x_hi = std::max(x_hi, xval(s.x[i]));
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  for (const auto& b : plot.bands)
    if (usable_x(b.x0) && usable_x(b.x1)) {
      x_lo = std::min(x_lo, xval(b.x0));
      x_hi = std::max(x_hi, xval(b.x1));
    }
  for (const auto& l : plot.hlines) {
    y_lo = std::min(y_lo, l.y);
    y_hi = std::max(y_hi, l.y);
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1;
  if (!std::isfinite(y_lo)) y_lo = 0, y_hi = 1;
  if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi == y_lo) y_lo -= 0.5, y_hi += 0.5;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo = plot.y_min.value_or(y_lo - pad);
  y_hi = plot.y_max.value_or(y_hi + pad);

  auto px = [&](double x) { return left + (xval(x) - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream os;
  os << header(W, H);
  os << text_at(W / 2.0, 22, plot.title, "middle", " font-size=\"15\"");

  const char* const band_fill[] = {"#dce9f5", "#ececec", "#f5e6d3"};
  for (std::size_t k = 0; k < plot.bands.size(); ++k) {
    const auto& b = plot.bands[k];
    if (!usable_x(b.x0) || !usable_x(b.x1) || px(b.x1) - px(b.x0) < 1.0) continue;
    os << "<rect x=\"" << f(px(b.x0)) << "\" y=\"" << f(top) << "\" width=\""
       << f(std::max(0.0, px(b.x1) - px(b.x0))) << "\" height=\"" << f(ph)
       << "\" fill=\"" << band_fill[k % 3] << "\"/>\n";
    os << text_at(0.5 * (px(b.x0) + px(b.x1)), top + 14, b.label, "middle", " fill=\"#555\"");
  }

  // Axes and ticks.
  os << "<rect x=\"" << f(left) << "\" y=\"" << f(top) << "\" width=\"" << f(pw)
     << "\" height=\"" << f(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  std::vector<double> xt;
  if (plot.log_x) {
    for (double d = std::ceil(x_lo); d <= x_hi + 1e-9; d += 1.0) xt.push_back(d);
  } else {
    xt = linear_ticks(x_lo, x_hi);
  }
  for (double t : xt) {
    const double x = left + (t - x_lo) / (x_hi - x_lo) * pw;
    os << "<line x1=\"" << f(x) << "\" y1=\"" << f(top + ph) << "\" x2=\"" << f(x) << "\" y2=\""
       << f(top + ph + 5) << "\" stroke=\"black\"/>\n";
    const std::string label = plot.log_x ? "1e" + std::to_string(static_cast<int>(std::lround(t)))
                                         : format_number(t);
    os << text_at(x, top + ph + 19, label);
  }
  for (double t : linear_ticks(y_lo, y_hi)) {
    const double y = py(t);
    os << "<line x1=\"" << f(left - 5) << "\" y1=\"" << f(y) << "\" x2=\"" << f(left)
       << "\" y2=\"" << f(y) << "\" stroke=\"black\"/>\n";
    os << text_at(left - 8, y + 4, format_number(t), "end");
  }
  os << text_at(left + pw / 2, H - 15, plot.x_label);
  os << text_at(20, top + ph / 2, plot.y_label, "middle",
                " transform=\"rotate(-90 20 " + f(top + ph / 2) + ")\"");

  os << "<clipPath id=\"plot\"><rect x=\"" << f(left) << "\" y=\"" << f(top) << "\" width=\""
     << f(pw) << "\" height=\"" << f(ph) << "\"/></clipPath>\n";
  for (const auto& l : plot.hlines) {
    os << "<line x1=\"" << f(left) << "\" y1=\"" << f(py(l.y)) << "\" x2=\"" << f(left + pw)
       << "\" y2=\"" << f(py(l.y)) << "\" stroke=\"#d62728\" stroke-dasharray=\"6 4\"/>\n";
    os << text_at(left + pw - 4, py(l.y) - 5, l.label, "end", " fill=\"#d62728\"");
  }

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    std::string d;
    bool pen = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) {
        pen = false;
        continue;
      }
      d += (pen ? " L" : (d.empty() ? "M" : " M")) + f(px(s.x[i])) + " " + f(py(s.y[i]));
      pen = true;
    }
    if (!d.empty())
      os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.8\" clip-path=\"url(#plot)\""
         << (s.dashed ? " stroke-dasharray=\"5 3\"" : "") << "/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << f(left + pw + 12) << "\" y1=\"" << f(ly) << "\" x2=\"" << f(left + pw + 36)
       << "\" y2=\"" << f(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << text_at(left + pw + 42, ly + 4, s.label, "start");
  }
  os << "</svg>\n";
  return os.str();
}

std::string matrix_bars(const Matrix& m, const std::vector<std::string>& labels,
                        const std::string& title) {
  const auto n = static_cast<int>(m.rows());
  const double cell = n <= 4 ? 70.0 : (n <= 8 ? 48.0 : 30.0);
  const double top = 120;
  const int W = static_cast<int>(std::max(520.0, 150 + cell * n));
  const double left = std::max(120.0, (W - cell * n) / 2);
  const int H = static_cast<int>(top + cell * n + 30);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) scale = std::max(scale, std::abs(m(i, j).real()));
  if (scale == 0.0) scale = 1.0;

  std::ostringstream os;
  os << header(W, H);
  os << text_at(W / 2.0, 22, title + " (real part, max |value| " + format_number(scale) + ")",
                "middle", " font-size=\"14\"");
  for (int i = 0; i < n; ++i) {
    const std::string label = i < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(i)] : "";
    os << text_at(left - 6, top + cell * (i + 0.5) + 4, label, "end", " font-size=\"10\"");
    const double cx = left + cell * (i + 0.5);
    os << text_at(cx, top - 6, label, "start",
                  " font-size=\"10\" transform=\"rotate(-60 " + f(cx) + " " + f(top - 6) + ")\"");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = left + cell * j, y = top + cell * i;
      os << "<rect x=\"" << f(x) << "\" y=\"" << f(y) << "\" width=\"" << f(cell) << "\" height=\""
         << f(cell) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
      const double v = m(i, j).real();
      if (std::abs(v) < 1e-12) continue;
      const double h = std::abs(v) / scale * (cell / 2 - 3);
      const double mid = y + cell / 2;
      os << "<rect x=\"" << f(x + cell * 0.25) << "\" y=\"" << f(v > 0 ? mid - h : mid)
         << "\" width=\"" << f(cell * 0.5) << "\" height=\"" << f(h) << "\" fill=\""
         << (v > 0 ? "#1f77b4" : "#ff7f0e") << "\"/>\n";
    }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const std::vector<double>& values, int nx, int ny, double x0, double x1,
                    double y0, double y1, const std::string& title) {
  const int stride = std::max(1, std::max(nx, ny) / 80);
  const int cx = (nx + stride - 1) / stride, cy = (ny + stride - 1) / stride;
  const double cell = 400.0 / std::max(cx, cy);
  const double left = 60, top = 40;
  const int W = static_cast<int>(left + cell * cx + 40);
  const int H = static_cast<int>(top + cell * cy + 50);
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  std::ostringstream os;
  os << header(W, H);
  os << text_at(W / 2.0, 22, title + " (max |W| " + format_number(scale) + ")", "middle",
                " font-size=\"14\"");
  for (int j = 0; j < cy; ++j)
    for (int i = 0; i < cx; ++i) {
      const double v = values[static_cast<std::size_t>((j * stride) * nx + i * stride)] / scale;
      const int shade = static_cast<int>(std::lround(255 * (1 - std::min(1.0, std::abs(v)))));
      char color[8];
      const int r = v >= 0 ? 255 : shade, b = v >= 0 ? shade : 255;
      std::snprintf(color, sizeof color, "#%02x%02x%02x", r, shade, b);
      // Row j = 0 is p = y0, drawn at the bottom.
      os << "<rect x=\"" << f(left + cell * i) << "\" y=\"" << f(top + cell * (cy - 1 - j))
         << "\" width=\"" << f(cell + 0.05) << "\" height=\"" << f(cell + 0.05) << "\" fill=\""
         << color << "\"/>\n";
    }
  os << text_at(left, top + cell * cy + 16, format_number(x0), "start");
  os << text_at(left + cell * cx, top + cell * cy + 16, format_number(x1), "end");
  os << text_at(left + cell * cx / 2, top + cell * cy + 34, "x");
  os << text_at(left - 6, top + cell * cy, format_number(y0), "end");
  os << text_at(left - 6, top + 10, format_number(y1), "end");
  os << text_at(left - 30, top + cell * cy / 2, "p");
  os << "</svg>\n";
  return os.str();
}

}  // namespace ringmem::svg
