#include "cforge/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cforge {
namespace {

using Point = std::vector<double>;

Point clamp(Point p, const std::vector<Interval>& bounds) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], bounds[i].first, bounds[i].second);
  return p;
}

// a + t * (b - a)
Point along(const Point& a, const Point& b, double t) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, const std::vector<Interval>& bounds,
                                      const NelderMeadOptions& options, const IterationCallback& callback) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("Nelder-Mead needs at least one dimension");
  if (bounds.size() != n) throw std::invalid_argument("Nelder-Mead bounds do not match the start point");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("Nelder-Mead bounds must be finite with low <= high");
    }
  }

  NelderMeadResult result;
  auto eval = [&](const Point& p) {
    ++result.evaluations;
    return f(p);
  };

  std::vector<Point> simplex;
  simplex.push_back(clamp(std::move(x0), bounds));
  for (std::size_t i = 0; i < n; ++i) {
    Point p = simplex.front();
    const double step = options.initial_step * (bounds[i].second - bounds[i].first);
    p[i] = p[i] + step <= bounds[i].second ? p[i] + step : p[i] - step;
    simplex.push_back(clamp(std::move(p), bounds));
  }
  std::vector<double> values;
  for (const auto& p : simplex) values.push_back(eval(p));

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Point> s;
    std::vector<double> v;
    for (auto i : order) {
      s.push_back(std::move(simplex[i]));
      v.push_back(values[i]);
    }
    simplex = std::move(s);
    values = std::move(v);
  };
  sort_simplex();

  while (result.iterations < options.max_iterations) {
    double spread = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(simplex[v][i] - simplex[0][i]));
    }
    if (spread <= options.x_tol && values[n] - values[0] <= options.f_tol) break;
    ++result.iterations;

    Point centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / static_cast<double>(n);
    }
    const Point reflected = clamp(along(centroid, simplex[n], -1.0), bounds);
    const double fr = eval(reflected);
    if (fr < values[0]) {
      const Point expanded = clamp(along(centroid, simplex[n], -2.0), bounds);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const Point contracted =
          outside ? clamp(along(centroid, reflected, 0.5), bounds) : clamp(along(centroid, simplex[n], 0.5), bounds);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = contracted;
        values[n] = fc;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          simplex[v] = clamp(along(simplex[0], simplex[v], 0.5), bounds);
          values[v] = eval(simplex[v]);
        }
      }
    }
    sort_simplex();
    if (callback) callback(result.iterations, simplex[0], values[0]);
  }
  result.x = simplex[0];
  result.f = values[0];
  return result;
}

}  // namespace cforge
