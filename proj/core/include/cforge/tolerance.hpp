#pragma once

namespace cforge {

/// Default numeric tolerance for feasibility and implication checks.
inline constexpr double kDefaultTolerance = 1e-7;

/// Process-wide tolerance. Set once at startup (CLI flag or the
/// CONTRACT_FORGE_TOL environment variable); reads are lock-free.
double numeric_tolerance() noexcept;
void set_numeric_tolerance(double tol);

/// Reads CONTRACT_FORGE_TOL if present. Returns true when the variable was set.
bool load_tolerance_from_env();

/// Restores the previous tolerance on scope exit. Intended for tests.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double tol);
  ~ScopedTolerance();
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double previous_;
};

}  // namespace cforge
