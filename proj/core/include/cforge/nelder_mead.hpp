#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cforge/sampling.hpp"

namespace cforge {

struct NelderMeadOptions {
  std::size_t max_iterations = 2000;
  /// Stops once the simplex spans at most x_tol per coordinate and its values
  /// differ by at most f_tol.
  double x_tol = 1e-10;
  double f_tol = 1e-14;
  /// Initial simplex edge, as a fraction of each bound's width.
  double initial_step = 0.05;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;
/// Called after every iteration with the best vertex so far.
using IterationCallback = std::function<void(std::size_t iteration, const std::vector<double>& x, double f)>;

/// Box-constrained downhill simplex (reflection 1, expansion 2, contraction
/// 0.5, shrink 0.5). Candidate points are clamped into the box, so f is only
/// evaluated inside it. Throws std::invalid_argument on a dimension mismatch,
/// an empty problem or an inverted bound.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, const std::vector<Interval>& bounds,
                                      const NelderMeadOptions& options = {}, const IterationCallback& callback = {});

}  // namespace cforge
