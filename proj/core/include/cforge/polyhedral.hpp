#pragma once

#include <string_view>

#include "cforge/linear_term.hpp"
#include "cforge/lp.hpp"

namespace cforge {

/// Hard cap on intermediate Fourier-Motzkin term counts.
inline constexpr std::size_t kEliminationTermLimit = 50000;

LpOutcome lp_optimize(const LinearExpr& objective, const TermList& constraints, Direction direction);

/// True iff every point of `context` satisfies `term`. An empty context region implies everything.
bool is_implied(const LinearTerm& term, const TermList& context);
bool is_satisfiable(const TermList& constraints);

/// Every term of `consequent` is implied by `antecedent`.
bool implies_all(const TermList& antecedent, const TermList& consequent);
/// Mutual implication.
bool equivalent(const TermList& a, const TermList& b);

/// Drops trivially true terms and terms implied by the rest, scanning in order.
TermList reduce(const TermList& constraints);
/// Drops terms of `terms` implied by `context` plus the remaining terms.
TermList reduce_in_context(const TermList& terms, const TermList& context);

/// Fourier-Motzkin projection onto the variables not in `drop`.
TermList eliminate(const TermList& constraints, const VarSet& drop);

struct VarRange {
  double lower;  // -inf when unbounded below
  double upper;  // +inf when unbounded above
};

VarRange var_bounds(const TermList& constraints, std::string_view var);

/// Terms connected to any of `seeds` through shared variables.
TermList connected_terms(const TermList& constraints, const VarSet& seeds);

}  // namespace cforge
