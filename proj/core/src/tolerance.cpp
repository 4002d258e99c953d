#include "cforge/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cforge/errors.hpp"

namespace cforge {
namespace {

std::atomic<double> g_tolerance{kDefaultTolerance};

}  // namespace

double numeric_tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_numeric_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ConfigError("tolerance must be a positive finite number");
  }
  g_tolerance.store(tol, std::memory_order_relaxed);
}

bool load_tolerance_from_env() {
  const char* raw = std::getenv("CONTRACT_FORGE_TOL");
  if (raw == nullptr || *raw == '\0') return false;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string("CONTRACT_FORGE_TOL is not a number: ") + raw);
  }
  if (used != std::string(raw).size()) {
    throw ConfigError(std::string("CONTRACT_FORGE_TOL is not a number: ") + raw);
  }
  set_numeric_tolerance(value);
  return true;
}

ScopedTolerance::ScopedTolerance(double tol) : previous_(numeric_tolerance()) {
  set_numeric_tolerance(tol);
}

ScopedTolerance::~ScopedTolerance() { g_tolerance.store(previous_, std::memory_order_relaxed); }

}  // namespace cforge
