#include "cforge/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cforge {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptimalityTol = 1e-9;
constexpr double kZeroClean = 1e-13;
constexpr int kDegenerateRunBeforeBland = 30;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& objective_rhs() { return at(rows_, cols_); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = cols_ + 1;
    double* prow = &data_[pr * width];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * width];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) {
        if (prow[c] == 0.0) continue;
        row[c] -= f * prow[c];
        if (std::abs(row[c]) < kZeroClean) row[c] = 0.0;
      }
      row[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseResult { Optimal, Unbounded };

PhaseResult run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed_cols) {
  const std::size_t max_iterations = 20000 + 50 * (t.rows() + t.cols());
  bool bland = false;
  int degenerate_run = 0;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::size_t enter = allowed_cols;
    double best = -kOptimalityTol;
    for (std::size_t c = 0; c < allowed_cols; ++c) {
      const double d = t.cost(c);
      if (d < best) {
        enter = c;
        if (bland) break;
        best = d;
      }
    }
    if (enter == allowed_cols) return PhaseResult::Optimal;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, t.rhs(r)) / a;
      if (leave == t.rows()) {
        best_ratio = ratio;
        leave = r;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, best_ratio);
      if (ratio < best_ratio - slack) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + slack && basis[r] < basis[leave]) {
        leave = r;
      }
    }
    if (leave == t.rows()) return PhaseResult::Unbounded;

    if (best_ratio <= 1e-12) {
      if (++degenerate_run >= kDegenerateRunBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
    }
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex iteration limit reached");
}

struct Row {
  std::vector<double> coeffs;
  double rhs;
  bool equality;
};

}  // namespace

DenseLpResult solve_dense_lp(const DenseLp& lp, double tol) {
  const std::size_t n = lp.num_vars;
  DenseLpResult result;

  std::vector<Row> rows;
  rows.reserve(lp.leq_rows.size() + lp.eq_rows.size());
  auto add_row = [&](const std::vector<double>& coeffs, double rhs, bool equality) {
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
      const bool ok = equality ? std::abs(rhs) <= tol : rhs >= -tol;
      return ok;
    }
    Row row{coeffs, rhs / scale, equality};
    for (double& c : row.coeffs) c /= scale;
    rows.push_back(std::move(row));
    return true;
  };
  for (std::size_t i = 0; i < lp.leq_rows.size(); ++i) {
    if (!add_row(lp.leq_rows[i], lp.leq_rhs[i], false)) return result;
  }
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    if (!add_row(lp.eq_rows[i], lp.eq_rhs[i], true)) return result;
  }

  const std::size_t m = rows.size();
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const Row& r : rows) {
    if (!r.equality) ++num_slack;
    if (r.equality || r.rhs < 0.0) ++num_art;
  }
  const std::size_t structural = 2 * n;
  const std::size_t art_begin = structural + num_slack;
  const std::size_t cols = art_begin + num_art;

  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t slack_col = structural;
  std::size_t art_col = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, j) = sign * r.coeffs[j];
      t.at(i, n + j) = -sign * r.coeffs[j];
    }
    t.rhs(i) = sign * r.rhs;
    if (!r.equality) {
      t.at(i, slack_col) = sign;
      if (sign > 0.0) basis[i] = slack_col;
      ++slack_col;
    }
    if (r.equality || sign < 0.0) {
      t.at(i, art_col) = 1.0;
      basis[i] = art_col;
      ++art_col;
    }
  }

  // Phase 1: minimize the sum of artificials.
  if (num_art > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t c = 0; c < art_begin; ++c) t.cost(c) -= t.at(i, c);
      t.objective_rhs() -= t.rhs(i);
    }
    run_simplex(t, basis, cols);
    double rhs_scale = 1.0;
    for (const Row& r : rows) rhs_scale = std::max(rhs_scale, std::abs(r.rhs));
    if (-t.objective_rhs() > tol * rhs_scale) return result;

    // Drive remaining artificials out of the basis; rows that cannot pivot are redundant.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      std::size_t best_col = art_begin;
      double best_abs = kPivotTol;
      for (std::size_t c = 0; c < art_begin; ++c) {
        const double a = std::abs(t.at(i, c));
        if (a > best_abs) {
          best_abs = a;
          best_col = c;
        }
      }
      if (best_col < art_begin) {
        t.pivot(i, best_col);
        basis[i] = best_col;
      }
    }
  }

  // Phase 2.
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = lp.objective[j];
    cost[n + j] = -lp.objective[j];
  }
  for (std::size_t c = 0; c <= cols; ++c) t.cost(c) = c < cols ? cost[c] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = cost[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(i, c);
  }
  if (run_simplex(t, basis, art_begin) == PhaseResult::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = basis[i];
    if (b < n) {
      result.x[b] += t.rhs(i);
    } else if (b < structural) {
      result.x[b - n] -= t.rhs(i);
    }
  }
  result.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

LpOutcome DenseSimplexSolver::solve(const LinearExpr& objective, const TermList& constraints, Direction direction,
                                    double tol) const {
  VarSet names = constraints.variables();
  for (const auto& entry : objective.coefficients) names.insert(entry.first);
  std::vector<std::string> index(names.begin(), names.end());
  auto position = [&](const std::string& name) {
    return static_cast<std::size_t>(std::lower_bound(index.begin(), index.end(), name) - index.begin());
  };

  DenseLp lp;
  lp.num_vars = index.size();
  lp.objective.assign(index.size(), 0.0);
  const double sign = direction == Direction::Max ? -1.0 : 1.0;
  for (const auto& [name, coeff] : objective.coefficients) lp.objective[position(name)] = sign * coeff;
  for (const LinearTerm& term : constraints) {
    std::vector<double> row(index.size(), 0.0);
    for (const auto& [name, coeff] : term.coefficients()) row[position(name)] = coeff;
    if (term.is_equality()) {
      lp.eq_rows.push_back(std::move(row));
      lp.eq_rhs.push_back(term.bound());
    } else {
      lp.leq_rows.push_back(std::move(row));
      lp.leq_rhs.push_back(term.bound());
    }
  }

  const DenseLpResult dense = solve_dense_lp(lp, tol);
  LpOutcome outcome;
  outcome.status = dense.status;
  if (dense.status != LpStatus::Optimal) return outcome;
  Assignment witness;
  for (std::size_t j = 0; j < index.size(); ++j) witness.emplace(index[j], dense.x[j]);
  outcome.value = objective.evaluate(witness);
  outcome.witness = std::move(witness);
  return outcome;
}

const LpSolver& default_lp_solver() noexcept {
  static const DenseSimplexSolver solver;
  return solver;
}

}  // namespace cforge
