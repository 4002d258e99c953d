#include "cforge/linear_term.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cforge {

bool is_valid_var_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (std::isdigit(first)) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

// ---- LinearExpr ------------------------------------------------------------

double LinearExpr::evaluate(const Assignment& point) const {
  double value = constant;
  for (const auto& [name, coeff] : coefficients) {
    if (auto it = point.find(name); it != point.end()) value += coeff * it->second;
  }
  return value;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [name, coeff] : other.coefficients) {
    double& slot = coefficients[name];
    slot += coeff;
    if (slot == 0.0) coefficients.erase(name);
  }
  constant += other.constant;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) { return *this += (-1.0) * other; }

LinearExpr& LinearExpr::operator*=(double factor) {
  if (factor == 0.0) {
    coefficients.clear();
    constant = 0.0;
    return *this;
  }
  for (auto& entry : coefficients) entry.second *= factor;
  constant *= factor;
  return *this;
}

LinearExpr LinearExpr::variable(std::string name, double coefficient) {
  LinearExpr e;
  if (coefficient != 0.0) e.coefficients.emplace(std::move(name), coefficient);
  return e;
}

LinearExpr LinearExpr::number(double value) {
  LinearExpr e;
  e.constant = value;
  return e;
}

// ---- LinearTerm ------------------------------------------------------------

LinearTerm::LinearTerm(Coefficients coefficients, double bound, Relation relation)
    : coefficients_(std::move(coefficients)), bound_(bound), relation_(relation) {
  canonicalize();
}

LinearTerm LinearTerm::leq(const LinearExpr& expr, double rhs) {
  return LinearTerm(expr.coefficients, rhs - expr.constant, Relation::Leq);
}

LinearTerm LinearTerm::eq(const LinearExpr& expr, double rhs) {
  return LinearTerm(expr.coefficients, rhs - expr.constant, Relation::Eq);
}

void LinearTerm::canonicalize() {
  std::erase_if(coefficients_, [](const auto& entry) { return entry.second == 0.0; });
  if (bound_ == 0.0) bound_ = 0.0;  // folds -0.0
  if (relation_ == Relation::Eq) {
    const bool flip = bound_ < 0.0 || (bound_ == 0.0 && !coefficients_.empty() &&
                                       coefficients_.begin()->second < 0.0);
    if (flip) {
      for (auto& entry : coefficients_) entry.second = -entry.second;
      bound_ = bound_ == 0.0 ? 0.0 : -bound_;
    }
  }
}

double LinearTerm::coefficient(std::string_view var) const noexcept {
  auto it = coefficients_.find(var);
  return it == coefficients_.end() ? 0.0 : it->second;
}

bool LinearTerm::mentions(std::string_view var) const noexcept { return coefficients_.find(var) != coefficients_.end(); }

bool LinearTerm::mentions_any(const VarSet& vars) const noexcept {
  return std::any_of(coefficients_.begin(), coefficients_.end(),
                     [&](const auto& entry) { return vars.contains(entry.first); });
}

VarSet LinearTerm::variables() const {
  VarSet out;
  for (const auto& entry : coefficients_) out.insert(entry.first);
  return out;
}

LinearExpr LinearTerm::lhs() const {
  LinearExpr e;
  e.coefficients = coefficients_;
  return e;
}

bool LinearTerm::is_trivially_true(double tol) const noexcept {
  if (!is_constant()) return false;
  return relation_ == Relation::Leq ? bound_ >= -tol : std::abs(bound_) <= tol;
}

bool LinearTerm::is_trivially_false(double tol) const noexcept { return is_constant() && !is_trivially_true(tol); }

double LinearTerm::residual(const Assignment& point) const { return lhs().evaluate(point) - bound_; }

bool LinearTerm::satisfied_by(const Assignment& point, double tol) const {
  const double r = residual(point);
  return relation_ == Relation::Leq ? r <= tol : std::abs(r) <= tol;
}

LinearTerm LinearTerm::scaled(double factor) const {
  if (relation_ == Relation::Leq && !(factor > 0.0)) {
    throw std::invalid_argument("inequalities may only be scaled by a positive factor");
  }
  Coefficients scaled_coeffs = coefficients_;
  for (auto& entry : scaled_coeffs) entry.second *= factor;
  return LinearTerm(std::move(scaled_coeffs), bound_ * factor, relation_);
}

LinearTerm LinearTerm::normalized() const {
  double largest = 0.0;
  for (const auto& entry : coefficients_) largest = std::max(largest, std::abs(entry.second));
  if (largest == 0.0 || largest == 1.0) return *this;
  return scaled(1.0 / largest);
}

LinearTerm LinearTerm::combined(const LinearTerm& other, double factor) const {
  // Entries that cancel down to rounding noise relative to their operands are dropped.
  constexpr double kCancel = 1e-12;
  Coefficients out = coefficients_;
  for (const auto& [name, coeff] : other.coefficients_) {
    auto it = out.find(name);
    const double add = factor * coeff;
    if (it == out.end()) {
      out.emplace(name, add);
      continue;
    }
    const double magnitude = std::abs(it->second) + std::abs(add);
    it->second += add;
    if (std::abs(it->second) <= kCancel * magnitude) out.erase(it);
  }
  double bound = bound_ + factor * other.bound_;
  if (std::abs(bound) <= kCancel * (std::abs(bound_) + std::abs(factor * other.bound_))) bound = 0.0;
  const Relation rel = (relation_ == Relation::Eq && other.relation_ == Relation::Eq) ? Relation::Eq : Relation::Leq;
  return LinearTerm(std::move(out), bound, rel);
}

LinearTerm LinearTerm::renamed(const RenameMap& names) const {
  Coefficients out;
  for (const auto& [name, coeff] : coefficients_) {
    auto it = names.find(name);
    const std::string& target = it == names.end() ? name : it->second;
    double& slot = out[target];
    slot += coeff;
  }
  return LinearTerm(std::move(out), bound_, relation_);
}

std::vector<LinearTerm> LinearTerm::as_inequalities() const {
  if (relation_ == Relation::Leq) return {*this};
  Coefficients negated = coefficients_;
  for (auto& entry : negated) entry.second = -entry.second;
  return {LinearTerm(coefficients_, bound_, Relation::Leq), LinearTerm(std::move(negated), -bound_, Relation::Leq)};
}

// ---- TermList --------------------------------------------------------------

void TermList::append(const TermList& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

VarSet TermList::variables() const {
  VarSet out;
  for (const auto& t : terms_) {
    for (const auto& entry : t.coefficients()) out.insert(entry.first);
  }
  return out;
}

bool TermList::mentions_any(const VarSet& vars) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const LinearTerm& t) { return t.mentions_any(vars); });
}

TermList TermList::expanded() const {
  TermList out;
  for (const auto& t : terms_) {
    for (auto& piece : t.as_inequalities()) out.push_back(std::move(piece));
  }
  return out;
}

TermList TermList::renamed(const RenameMap& names) const {
  TermList out;
  for (const auto& t : terms_) out.push_back(t.renamed(names));
  return out;
}

bool TermList::satisfied_by(const Assignment& point, double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const LinearTerm& t) { return t.satisfied_by(point, tol); });
}

}  // namespace cforge
