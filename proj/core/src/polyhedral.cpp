#include "cforge/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>

#include "cforge/errors.hpp"
#include "cforge/tolerance.hpp"

namespace cforge {
namespace {

double slack_for(double bound, double tol) { return tol * std::max(1.0, std::abs(bound)); }

// s such that a.coefficients == s * b.coefficients, if one exists.
std::optional<double> parallel_factor(const LinearTerm& a, const LinearTerm& b) {
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  if (ca.size() != cb.size() || ca.empty()) return std::nullopt;
  const double s = ca.begin()->second / cb.begin()->second;
  auto ib = cb.begin();
  for (auto ia = ca.begin(); ia != ca.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return std::nullopt;
    const double expected = s * ib->second;
    if (std::abs(ia->second - expected) > 1e-9 * std::max(std::abs(ia->second), std::abs(expected))) {
      return std::nullopt;
    }
  }
  return s;
}

// True when `strong` implies `weak` because the two rows are parallel.
bool dominates(const LinearTerm& strong, const LinearTerm& weak, double tol) {
  const auto s = parallel_factor(weak, strong);
  if (!s) return false;
  const double scaled = *s * strong.bound();
  if (weak.is_equality()) {
    return strong.is_equality() && std::abs(scaled - weak.bound()) <= slack_for(weak.bound(), tol);
  }
  if (!strong.is_equality() && *s <= 0.0) return false;
  return scaled <= weak.bound() + slack_for(weak.bound(), tol);
}

std::string signature(const LinearTerm& t) {
  std::string key;
  for (const auto& entry : t.coefficients()) {
    key += entry.first;
    key += '\x1f';
  }
  return key;
}

// Drops trivially true terms and rows dominated by a parallel row. Among
// mutually dominating rows the first one is kept.
std::vector<LinearTerm> drop_parallel(const std::vector<LinearTerm>& input, double tol) {
  std::vector<LinearTerm> terms;
  terms.reserve(input.size());
  for (const auto& t : input) {
    if (!t.is_trivially_true(tol)) terms.push_back(t);
  }
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < terms.size(); ++i) groups[signature(terms[i])].push_back(i);

  std::vector<bool> keep(terms.size(), true);
  for (const auto& entry : groups) {
    const auto& members = entry.second;
    if (members.size() < 2) continue;
    for (std::size_t a = 0; a < members.size(); ++a) {
      const std::size_t i = members[a];
      for (std::size_t b = 0; b < members.size(); ++b) {
        const std::size_t j = members[b];
        if (i == j || !dominates(terms[j], terms[i], tol)) continue;
        if (!dominates(terms[i], terms[j], tol) || j < i) {
          keep[i] = false;
          break;
        }
      }
    }
  }
  std::vector<LinearTerm> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (keep[i]) out.push_back(std::move(terms[i]));
  }
  return out;
}

const LinearTerm* first_false(const std::vector<LinearTerm>& terms, double tol) {
  for (const auto& t : terms) {
    if (t.is_trivially_false(tol)) return &t;
  }
  return nullptr;
}

bool implied_by_parallel(const LinearTerm& term, const TermList& context, double tol) {
  return std::any_of(context.begin(), context.end(),
                     [&](const LinearTerm& c) { return dominates(c, term, tol); });
}

// fa * a + fb * b with `var` removed exactly, normalized to unit max coefficient.
LinearTerm combine_without(const LinearTerm& a, double fa, const LinearTerm& b, double fb, const std::string& var) {
  LinearTerm sum = a.scaled(fa).combined(b, fb);
  if (sum.mentions(var)) {
    Coefficients coeffs = sum.coefficients();
    coeffs.erase(var);
    sum = LinearTerm(std::move(coeffs), sum.bound(), sum.relation());
  }
  return sum.normalized();
}

// Picks the next variable to project out.
std::string choose_variable(const std::vector<LinearTerm>& terms, const VarSet& pending) {
  for (const auto& v : pending) {
    for (const auto& t : terms) {
      if (t.is_equality() && t.mentions(v)) return v;
    }
  }
  std::string best;
  long long best_growth = std::numeric_limits<long long>::max();
  for (const auto& v : pending) {
    long long pos = 0;
    long long neg = 0;
    for (const auto& t : terms) {
      const double c = t.coefficient(v);
      if (c > 0.0) ++pos;
      if (c < 0.0) ++neg;
    }
    const long long growth = pos * neg - pos - neg;
    if (growth < best_growth) {
      best_growth = growth;
      best = v;
    }
  }
  return best;
}

std::vector<LinearTerm> eliminate_one(const std::vector<LinearTerm>& terms, const std::string& v) {
  std::vector<LinearTerm> out;
  // Substitution through an equality when one exists.
  std::size_t pivot = terms.size();
  double pivot_abs = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].is_equality()) continue;
    const double a = std::abs(terms[i].coefficient(v));
    if (a > pivot_abs) {
      pivot_abs = a;
      pivot = i;
    }
  }
  if (pivot < terms.size()) {
    const LinearTerm& p = terms[pivot];
    const double pv = p.coefficient(v);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i == pivot) continue;
      const double c = terms[i].coefficient(v);
      if (c == 0.0) {
        out.push_back(terms[i]);
      } else {
        out.push_back(combine_without(terms[i], 1.0, p, -c / pv, v));
      }
    }
    return out;
  }

  std::vector<const LinearTerm*> positive;
  std::vector<const LinearTerm*> negative;
  for (const auto& t : terms) {
    const double c = t.coefficient(v);
    if (c > 0.0) {
      positive.push_back(&t);
    } else if (c < 0.0) {
      negative.push_back(&t);
    } else {
      out.push_back(t);
    }
  }
  if (out.size() + positive.size() * negative.size() > kEliminationTermLimit) {
    throw ExplosionError("elimination of '" + v + "' exceeds " + std::to_string(kEliminationTermLimit) + " terms");
  }
  for (const LinearTerm* p : positive) {
    const double cp = p->coefficient(v);
    for (const LinearTerm* n : negative) {
      const double cn = -n->coefficient(v);
      out.push_back(combine_without(*p, cn, *n, cp, v));
    }
  }
  return out;
}

}  // namespace

LpOutcome lp_optimize(const LinearExpr& objective, const TermList& constraints, Direction direction) {
  return default_lp_solver().solve(objective, constraints, direction, numeric_tolerance());
}

bool is_satisfiable(const TermList& constraints) {
  const double tol = numeric_tolerance();
  if (first_false(constraints.terms(), tol) != nullptr) return false;
  return lp_optimize(LinearExpr{}, constraints, Direction::Min).optimal();
}

bool is_implied(const LinearTerm& term, const TermList& context) {
  const double tol = numeric_tolerance();
  if (term.is_constant()) {
    return term.is_trivially_true(tol) || !is_satisfiable(context);
  }
  if (implied_by_parallel(term, context, tol)) return true;
  const LinearExpr lhs = term.lhs();
  const double k = term.bound();
  const LpOutcome upper = lp_optimize(lhs, context, Direction::Max);
  if (upper.status == LpStatus::Infeasible) return true;
  if (upper.status == LpStatus::Unbounded || *upper.value > k + slack_for(k, tol)) return false;
  if (!term.is_equality()) return true;
  const LpOutcome lower = lp_optimize(lhs, context, Direction::Min);
  return lower.optimal() && *lower.value >= k - slack_for(k, tol);
}

bool implies_all(const TermList& antecedent, const TermList& consequent) {
  return std::all_of(consequent.begin(), consequent.end(),
                     [&](const LinearTerm& t) { return is_implied(t, antecedent); });
}

bool equivalent(const TermList& a, const TermList& b) { return implies_all(a, b) && implies_all(b, a); }

TermList reduce_in_context(const TermList& terms, const TermList& context) {
  const double tol = numeric_tolerance();
  std::vector<LinearTerm> work = drop_parallel(terms.terms(), tol);
  std::vector<bool> alive(work.size(), true);
  for (std::size_t i = 0; i < work.size(); ++i) {
    TermList rest = context;
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (j != i && alive[j]) rest.push_back(work[j]);
    }
    if (is_implied(work[i], rest)) alive[i] = false;
  }
  TermList out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (alive[i]) out.push_back(std::move(work[i]));
  }
  return out;
}

TermList reduce(const TermList& constraints) {
  const double tol = numeric_tolerance();
  if (const LinearTerm* bad = first_false(constraints.terms(), tol)) return TermList{*bad};
  return reduce_in_context(constraints, TermList{});
}

TermList eliminate(const TermList& constraints, const VarSet& drop) {
  const double tol = numeric_tolerance();
  std::vector<LinearTerm> terms = drop_parallel(constraints.terms(), tol);
  VarSet pending;
  for (const auto& t : terms) {
    for (const auto& entry : t.coefficients()) {
      if (drop.contains(entry.first)) pending.insert(entry.first);
    }
  }
  while (!pending.empty()) {
    if (const LinearTerm* bad = first_false(terms, tol)) return TermList{*bad};
    const std::string v = choose_variable(terms, pending);
    pending.erase(v);
    const std::size_t before = terms.size();
    terms = drop_parallel(eliminate_one(terms, v), tol);
    if (terms.size() > 2 * before && terms.size() > 40) terms = reduce(TermList(std::move(terms))).terms();
  }
  return reduce(TermList(std::move(terms)));
}

TermList connected_terms(const TermList& constraints, const VarSet& seeds) {
  VarSet reached = seeds;
  std::vector<bool> taken(constraints.size(), false);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (taken[i] || !constraints[i].mentions_any(reached)) continue;
      taken[i] = true;
      grew = true;
      for (const auto& entry : constraints[i].coefficients()) reached.insert(entry.first);
    }
  }
  TermList out;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (taken[i]) out.push_back(constraints[i]);
  }
  return out;
}

VarRange var_bounds(const TermList& constraints, std::string_view var) {
  if (!is_satisfiable(constraints)) throw InfeasibleRegion();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const TermList component = connected_terms(constraints, VarSet{std::string(var)});
  const LinearExpr objective = LinearExpr::variable(std::string(var));
  const LpOutcome lo = lp_optimize(objective, component, Direction::Min);
  const LpOutcome hi = lp_optimize(objective, component, Direction::Max);
  if (lo.status == LpStatus::Infeasible || hi.status == LpStatus::Infeasible) throw InfeasibleRegion();
  return VarRange{lo.optimal() ? *lo.value : -inf, hi.optimal() ? *hi.value : inf};
}

}  // namespace cforge
