#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cforge/linear_term.hpp"

namespace cforge {

enum class Direction { Min, Max };
enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<double> value;        // set iff Optimal
  std::optional<Assignment> witness;  // set iff Optimal

  bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

/// Solver interface. Implementations must be stateless or internally
/// synchronized; the polyhedral layer calls them from many threads.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpOutcome solve(const LinearExpr& objective, const TermList& constraints, Direction direction,
                          double tol) const = 0;
};

/// Two-phase dense tableau simplex over free variables.
/// Dantzig pricing, switching to Bland's rule after a run of degenerate pivots.
class DenseSimplexSolver final : public LpSolver {
 public:
  LpOutcome solve(const LinearExpr& objective, const TermList& constraints, Direction direction,
                  double tol) const override;
};

const LpSolver& default_lp_solver() noexcept;

/// Low-level form: minimize c.x subject to rows, x free.
struct DenseLp {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> leq_rows;
  std::vector<double> leq_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
};

struct DenseLpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

DenseLpResult solve_dense_lp(const DenseLp& lp, double tol);

}  // namespace cforge
