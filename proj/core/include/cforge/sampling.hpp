#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cforge {

/// Seeded generator with a platform-independent mapping to doubles, so that
/// sample streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

using Interval = std::pair<double, double>;

/// n points; along every dimension each of the n equal-width strata holds
/// exactly one value. Throws std::invalid_argument for n == 0 or low >= high.
std::vector<std::vector<double>> latin_hypercube_sample(std::size_t n, const std::vector<Interval>& dims,
                                                        std::uint64_t seed);

}  // namespace cforge
