#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cforge {

using VarSet = std::set<std::string, std::less<>>;
using Coefficients = std::map<std::string, double, std::less<>>;
using RenameMap = std::map<std::string, std::string, std::less<>>;
/// A point: variable name to value. Variables absent from the map read as zero.
using Assignment = std::map<std::string, double, std::less<>>;

/// Letters, digits and underscores; must not start with a digit.
bool is_valid_var_name(std::string_view name) noexcept;

/// Affine expression sum(c_v * v) + constant. Used for objectives and by the parser.
struct LinearExpr {
  Coefficients coefficients;
  double constant = 0.0;

  bool is_constant() const noexcept { return coefficients.empty(); }
  double evaluate(const Assignment& point) const;

  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(double factor);
  friend LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs) { return lhs += rhs; }
  friend LinearExpr operator-(LinearExpr lhs, const LinearExpr& rhs) { return lhs -= rhs; }
  friend LinearExpr operator*(double f, LinearExpr e) { return e *= f; }

  static LinearExpr variable(std::string name, double coefficient = 1.0);
  static LinearExpr number(double value);
};

enum class Relation { Leq, Eq };

/// One canonical constraint: sum(c_v * v) <= bound, or sum(c_v * v) = bound.
///
/// Zero coefficients are pruned at construction. Equalities are stored with a
/// non-negative bound; when the bound is zero the alphabetically first
/// coefficient is positive. Values are otherwise stored untouched.
class LinearTerm {
 public:
  LinearTerm(Coefficients coefficients, double bound, Relation relation = Relation::Leq);

  /// expr <= rhs (or expr = rhs); the expression constant moves to the right.
  static LinearTerm leq(const LinearExpr& expr, double rhs = 0.0);
  static LinearTerm eq(const LinearExpr& expr, double rhs = 0.0);

  const Coefficients& coefficients() const noexcept { return coefficients_; }
  double bound() const noexcept { return bound_; }
  Relation relation() const noexcept { return relation_; }
  bool is_equality() const noexcept { return relation_ == Relation::Eq; }

  double coefficient(std::string_view var) const noexcept;
  bool mentions(std::string_view var) const noexcept;
  bool mentions_any(const VarSet& vars) const noexcept;
  VarSet variables() const;
  LinearExpr lhs() const;

  /// True when no variable is left; such a term is a constant comparison.
  bool is_constant() const noexcept { return coefficients_.empty(); }
  bool is_trivially_true(double tol) const noexcept;
  bool is_trivially_false(double tol) const noexcept;

  /// Evaluates lhs - bound at a point (missing variables read as zero).
  double residual(const Assignment& point) const;
  bool satisfied_by(const Assignment& point, double tol) const;

  /// Multiplies both sides by factor. Inequalities require factor > 0.
  LinearTerm scaled(double factor) const;
  /// Scales so that the largest |coefficient| is 1. Constant terms are returned as is.
  LinearTerm normalized() const;
  /// this + factor * other; the result is an equality only if both are.
  LinearTerm combined(const LinearTerm& other, double factor) const;
  LinearTerm renamed(const RenameMap& names) const;

  /// The two inequalities (e <= k, -e <= -k) equivalent to an equality; for an
  /// inequality returns just itself.
  std::vector<LinearTerm> as_inequalities() const;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) noexcept {
    return a.relation_ == b.relation_ && a.bound_ == b.bound_ && a.coefficients_ == b.coefficients_;
  }

 private:
  void canonicalize();

  Coefficients coefficients_;
  double bound_ = 0.0;
  Relation relation_ = Relation::Leq;
};

/// Ordered conjunction of terms; a convex polyhedron.
class TermList {
 public:
  TermList() = default;
  TermList(std::initializer_list<LinearTerm> terms) : terms_(terms) {}
  explicit TermList(std::vector<LinearTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<LinearTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const LinearTerm& operator[](std::size_t i) const { return terms_[i]; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  void push_back(LinearTerm term) { terms_.push_back(std::move(term)); }
  void append(const TermList& other);

  VarSet variables() const;
  bool mentions_any(const VarSet& vars) const;
  TermList expanded() const;
  TermList renamed(const RenameMap& names) const;
  bool satisfied_by(const Assignment& point, double tol) const;

  friend TermList operator+(TermList lhs, const TermList& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const TermList& a, const TermList& b) noexcept { return a.terms_ == b.terms_; }

 private:
  std::vector<LinearTerm> terms_;
};

}  // namespace cforge
