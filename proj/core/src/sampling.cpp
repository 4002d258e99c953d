#include "cforge/sampling.hpp"

#include <numeric>
#include <stdexcept>

namespace cforge {

std::size_t Rng::below(std::size_t n) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % n);
}

std::vector<std::vector<double>> latin_hypercube_sample(std::size_t n, const std::vector<Interval>& dims,
                                                        std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("latin hypercube needs at least one sample");
  for (const auto& [lo, hi] : dims) {
    if (!(lo < hi)) throw std::invalid_argument("latin hypercube dimension needs low < high");
  }
  Rng rng(seed);
  std::vector<std::vector<double>> points(n, std::vector<double>(dims.size()));
  std::vector<std::size_t> strata(n);
  for (std::size_t d = 0; d < dims.size(); ++d) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    rng.shuffle(strata);
    const auto [lo, hi] = dims[d];
    const double width = (hi - lo) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = lo + (static_cast<double>(strata[i]) + rng.uniform()) * width;
      points[i][d] = v < hi ? v : hi;
    }
  }
  return points;
}

}  // namespace cforge
