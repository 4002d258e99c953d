#include "cforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cforge::svg {
namespace {

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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

std::string render(const Chart& chart, int width, int height) {
  const double left = 70, right = 150, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  Extent xs, ys;
  for (const auto& b : chart.bands) {
    for (double x : b.x) xs.add(x);
    for (double v : b.lo) ys.add(v);
    for (double v : b.hi) ys.add(v);
  }
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      xs.add(x);
      ys.add(y);
    }
  }
  xs.finish();
  ys.finish();
  auto px = [&](double x) { return left + (x - xs.lo) / (xs.hi - xs.lo) * pw; };
  auto py = [&](double y) { return top + ph - (y - ys.lo) / (ys.hi - ys.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(chart.title) << "</text>\n";
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xs.lo + (xs.hi - xs.lo) * i / 5.0;
    const double fy = ys.lo + (ys.hi - ys.lo) * i / 5.0;
    o << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(top + ph + 16) << "\" text-anchor=\"middle\">"
      << tick_label(fx) << "</text>\n";
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(fy) + 4) << "\" text-anchor=\"end\">" << tick_label(fy)
      << "</text>\n";
    o << "<line x1=\"" << num(left) << "\" x2=\"" << num(left + pw) << "\" y1=\"" << num(py(fy)) << "\" y2=\""
      << num(py(fy)) << "\" stroke=\"#eee\"/>\n";
  }
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
    << escape(chart.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(chart.y_label) << "</text>\n";

  for (const auto& b : chart.bands) {
    const std::size_t n = std::min({b.x.size(), b.lo.size(), b.hi.size()});
    if (n == 0) continue;
    o << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.3\" stroke=\"" << b.color << "\" points=\"";
    for (std::size_t i = 0; i < n; ++i) o << num(px(b.x[i])) << ',' << num(py(b.hi[i])) << ' ';
    for (std::size_t i = n; i-- > 0;) o << num(px(b.x[i])) << ',' << num(py(b.lo[i])) << ' ';
    o << "\"/>\n";
  }
  for (const auto& s : chart.series) {
    if (s.style == Series::Style::Line) {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
      for (const auto& [x, y] : s.points) o << num(px(x)) << ',' << num(py(y)) << ' ';
      o << "\"/>\n";
    } else {
      for (const auto& [x, y] : s.points) {
        o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << s.color
          << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
  }

  double ly = top + 10;
  auto legend = [&](const std::string& label, const std::string& color) {
    if (label.empty()) return;
    o << "<rect x=\"" << num(left + pw + 12) << "\" y=\"" << num(ly - 9) << "\" width=\"12\" height=\"12\" fill=\""
      << color << "\"/>\n";
    o << "<text x=\"" << num(left + pw + 30) << "\" y=\"" << num(ly + 1) << "\">" << escape(label) << "</text>\n";
    ly += 18;
  };
  for (const auto& b : chart.bands) legend(b.label, b.color);
  for (const auto& s : chart.series) legend(s.label, s.color);
  o << "</svg>\n";
  return o.str();
}

}  // namespace cforge::svg
