#include "cforge/contract.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "cforge/parser.hpp"
#include "cforge/tolerance.hpp"

namespace cforge {
namespace {

constexpr std::size_t kCandidateLimit = 10000;

bool contains(const std::vector<std::string>& names, std::string_view v) {
  return std::find(names.begin(), names.end(), v) != names.end();
}

VarSet intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()), std::less<>());
  return out;
}

void append_unique(std::vector<std::string>& out, const std::vector<std::string>& names, const VarSet& exclude) {
  for (const auto& n : names) {
    if (!exclude.contains(n) && !contains(out, n)) out.push_back(n);
  }
}

std::string quoted_list(const VarSet& vars) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : vars) {
    if (!first) out += ", ";
    out += "'" + v + "'";
    first = false;
  }
  return out + "]";
}

std::string block(const TermList& terms) {
  std::string out = "[\n";
  for (const auto& line : render(terms)) out += "    " + line + "\n";
  return out + "]";
}

LinearTerm without(const LinearTerm& t, const std::string& var) {
  if (!t.mentions(var)) return t;
  Coefficients coeffs = t.coefficients();
  coeffs.erase(var);
  return LinearTerm(std::move(coeffs), t.bound(), t.relation());
}

class SufficientSearch {
 public:
  SufficientSearch(const VarSet& drop, const TermList& context) : drop_(drop), context_(context) {}

  void run(const LinearTerm& term, VarSet eliminated) {
    std::string var;
    for (const auto& entry : term.coefficients()) {
      if (drop_.contains(entry.first)) {
        var = entry.first;
        break;
      }
    }
    if (var.empty()) {
      const Final f{term, eliminated.size()};
      if (std::find(finals_.begin(), finals_.end(), f) == finals_.end()) finals_.push_back(f);
      return;
    }
    if (++expanded_ > kCandidateLimit) throw DischargeFailure("too many substitution candidates");
    const double c = term.coefficient(var);
    eliminated.insert(var);
    for (const LinearTerm& row : context_) {
      const double rv = row.coefficient(var);
      if (rv == 0.0) continue;
      if (term.is_equality() && !row.is_equality()) continue;
      if (!row.is_equality() && (rv > 0.0) != (c > 0.0)) continue;
      bool reintroduces = false;
      for (const auto& entry : row.coefficients()) {
        if (entry.first != var && eliminated.contains(entry.first)) reintroduces = true;
      }
      if (reintroduces) continue;
      run(without(term.combined(row, -c / rv), var), eliminated);
    }
  }

  struct Final {
    LinearTerm term;
    std::size_t depth;  // substitutions used
    friend bool operator==(const Final&, const Final&) = default;
  };
  const std::vector<Final>& finals() const noexcept { return finals_; }

 private:
  const VarSet& drop_;
  const TermList& context_;
  std::vector<Final> finals_;
  std::size_t expanded_ = 0;
};

}  // namespace

// ---- PolyhedralContract ----------------------------------------------------

PolyhedralContract::PolyhedralContract(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                       TermList assumptions, TermList guarantees)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      assumptions_(std::move(assumptions)),
      guarantees_(std::move(guarantees)) {
  validate();
  compatible_ = is_satisfiable(assumptions_);
  consistent_ = compatible_ && is_satisfiable(assumptions_ + guarantees_);
}

PolyhedralContract::PolyhedralContract(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                       TermList assumptions, TermList guarantees, Flags flags)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      assumptions_(std::move(assumptions)),
      guarantees_(std::move(guarantees)),
      compatible_(flags.compatible),
      consistent_(flags.consistent) {
  validate();
}

PolyhedralContract PolyhedralContract::from_strings(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                                    const std::vector<std::string>& assumptions,
                                                    const std::vector<std::string>& guarantees) {
  return PolyhedralContract(std::move(inputs), std::move(outputs), parse_constraints(assumptions),
                            parse_constraints(guarantees));
}

void PolyhedralContract::validate() const {
  VarSet seen;
  for (const auto* group : {&inputs_, &outputs_}) {
    for (const auto& v : *group) {
      if (!is_valid_var_name(v)) throw InterfaceError("invalid variable name '" + v + "'");
      if (!seen.insert(v).second) throw InterfaceError("variable '" + v + "' declared more than once");
    }
  }
  const VarSet ins = input_set();
  for (const auto& t : assumptions_) {
    for (const auto& entry : t.coefficients()) {
      if (!ins.contains(entry.first)) {
        throw InterfaceError("assumption mentions '" + entry.first + "', which is not an input");
      }
    }
  }
  for (const auto& t : guarantees_) {
    for (const auto& entry : t.coefficients()) {
      if (!seen.contains(entry.first)) {
        throw InterfaceError("guarantee mentions undeclared variable '" + entry.first + "'");
      }
    }
  }
}

bool PolyhedralContract::is_input(std::string_view v) const { return contains(inputs_, v); }
bool PolyhedralContract::is_output(std::string_view v) const { return contains(outputs_, v); }

PolyhedralContract PolyhedralContract::renamed(const RenameMap& names) const {
  auto rename_all = [&](const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    out.reserve(vars.size());
    for (const auto& v : vars) {
      auto it = names.find(v);
      out.push_back(it == names.end() ? v : it->second);
    }
    return out;
  };
  return PolyhedralContract(rename_all(inputs_), rename_all(outputs_), assumptions_.renamed(names),
                            guarantees_.renamed(names), Flags{compatible_, consistent_});
}

// ---- Diagnostics -----------------------------------------------------------

std::string IncompatibilityDiagnostic::message() const {
  return "Could not eliminate variables " + quoted_list(variables) + " by refining the assumptions\n" +
         block(failed_terms) + "\nusing guarantees\n" + block(context_terms);
}

IncompatibilityError::IncompatibilityError(IncompatibilityDiagnostic diagnostic)
    : Error(diagnostic.message()), diagnostic_(std::move(diagnostic)) {}

// ---- Algebra ---------------------------------------------------------------

TermList transform_sufficient(const LinearTerm& term, const VarSet& drop, const TermList& context) {
  SufficientSearch search(drop, context);
  search.run(term, {});
  const double tol = numeric_tolerance();

  // Only the shortest substitution chains that yield anything usable are
  // considered. At that depth a variable-bearing condition wins over a
  // constant discharge.
  std::size_t depth = std::numeric_limits<std::size_t>::max();
  for (const auto& f : search.finals()) {
    if (!f.term.is_trivially_false(tol)) depth = std::min(depth, f.depth);
  }
  std::vector<LinearTerm> candidates;
  bool discharged = false;
  for (const auto& f : search.finals()) {
    if (f.depth != depth) continue;
    if (!f.term.is_constant()) {
      candidates.push_back(f.term);
    } else if (f.term.is_trivially_true(tol)) {
      discharged = true;
    }
  }
  if (candidates.empty()) {
    if (discharged) return {};
    throw DischargeFailure("no sufficient condition for '" + render_term(term) + "'");
  }

  // Keep the weakest candidates: drop any candidate that implies another one.
  std::vector<bool> keep(candidates.size(), true);
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    const TermList alone{candidates[a]};
    for (std::size_t b = 0; b < candidates.size(); ++b) {
      if (a == b || !keep[b] || !is_implied(candidates[b], alone)) continue;
      if (b < a || !is_implied(candidates[a], TermList{candidates[b]})) {
        keep[a] = false;
        break;
      }
    }
  }
  TermList out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keep[i]) out.push_back(candidates[i]);
  }
  return out;
}

PolyhedralContract compose(const PolyhedralContract& c1, const PolyhedralContract& c2, const VarSet& keep) {
  const VarSet clash = intersection(c1.output_set(), c2.output_set());
  if (!clash.empty()) throw InterfaceError("outputs shared by both contracts: " + quoted_list(clash));
  const bool forward = !intersection(c1.output_set(), c2.input_set()).empty();
  const bool backward = !intersection(c2.output_set(), c1.input_set()).empty();
  if (forward && backward) throw InterfaceError("cyclic connection between contracts");

  const PolyhedralContract& up = backward ? c2 : c1;
  const PolyhedralContract& down = backward ? c1 : c2;
  const VarSet upstream_out = up.output_set();
  VarSet internal;
  for (const auto& v : intersection(upstream_out, down.input_set())) {
    if (!keep.contains(v)) internal.insert(v);
  }

  VarSet all_outputs = upstream_out;
  for (const auto& v : down.outputs()) all_outputs.insert(v);
  std::vector<std::string> inputs;
  append_unique(inputs, up.inputs(), all_outputs);
  append_unique(inputs, down.inputs(), all_outputs);
  std::vector<std::string> outputs;
  append_unique(outputs, up.outputs(), internal);
  append_unique(outputs, down.outputs(), internal);

  TermList assumptions = up.assumptions();
  IncompatibilityDiagnostic diagnostic;
  diagnostic.context_terms = up.guarantees();
  for (const auto& t : down.assumptions()) {
    if (!t.mentions_any(upstream_out)) {
      assumptions.push_back(t);
      continue;
    }
    try {
      assumptions.append(transform_sufficient(t, upstream_out, up.guarantees()));
    } catch (const DischargeFailure&) {
      diagnostic.failed_terms.push_back(t);
      for (const auto& v : intersection(t.variables(), upstream_out)) diagnostic.variables.insert(v);
    }
  }
  if (!diagnostic.failed_terms.empty()) throw IncompatibilityError(std::move(diagnostic));

  assumptions = reduce(assumptions);
  TermList guarantees = reduce_in_context(eliminate(up.guarantees() + down.guarantees(), internal), assumptions);
  return PolyhedralContract(std::move(inputs), std::move(outputs), std::move(assumptions), std::move(guarantees));
}

PolyhedralContract quotient(const PolyhedralContract& top, const PolyhedralContract& partial) {
  for (const auto& v : partial.inputs()) {
    if (!top.is_input(v) && !top.is_output(v)) {
      throw InterfaceError("input '" + v + "' of the partial contract is not part of the top-level interface");
    }
  }
  for (const auto& v : partial.outputs()) {
    if (top.is_input(v)) throw InterfaceError("output '" + v + "' of the partial contract is a top-level input");
  }

  const VarSet partial_out = partial.output_set();
  const VarSet partial_in = partial.input_set();
  std::vector<std::string> inputs = partial.outputs();
  for (const auto& v : top.inputs()) {
    if (!partial_in.contains(v) && !contains(inputs, v)) inputs.push_back(v);
  }
  std::vector<std::string> outputs;
  for (const auto& v : top.outputs()) {
    if (!partial_out.contains(v)) outputs.push_back(v);
  }

  const VarSet in_q(inputs.begin(), inputs.end());
  VarSet interface_q = in_q;
  interface_q.insert(outputs.begin(), outputs.end());

  const TermList a_pool = top.assumptions() + partial.guarantees();
  VarSet drop_a;
  for (const auto& v : a_pool.variables()) {
    if (!in_q.contains(v)) drop_a.insert(v);
  }
  TermList assumptions = reduce(eliminate(a_pool, drop_a));

  const TermList g_pool = top.guarantees() + partial.guarantees() + partial.assumptions();
  VarSet drop_g;
  for (const auto& v : g_pool.variables()) {
    if (!interface_q.contains(v)) drop_g.insert(v);
  }
  TermList guarantees = reduce_in_context(eliminate(g_pool, drop_g), assumptions);

  PolyhedralContract result(std::move(inputs), std::move(outputs), std::move(assumptions), std::move(guarantees));

  VarSet keep;
  for (const auto& v : partial.outputs()) {
    if (top.is_output(v)) keep.insert(v);
  }
  try {
    if (!refines(compose(partial, result, keep), top)) {
      throw QuotientUnsound("composition with the quotient does not refine the top-level contract");
    }
  } catch (const IncompatibilityError& e) {
    throw QuotientUnsound(std::string("composition with the quotient failed: ") + e.what());
  } catch (const InterfaceError& e) {
    throw QuotientUnsound(std::string("composition with the quotient failed: ") + e.what());
  }
  return result;
}

PolyhedralContract merge(const PolyhedralContract& c1, const PolyhedralContract& c2) {
  const VarSet outs = [&] {
    VarSet s = c1.output_set();
    for (const auto& v : c2.outputs()) s.insert(v);
    return s;
  }();
  for (const auto* side : {&c1, &c2}) {
    for (const auto& v : side->inputs()) {
      if (outs.contains(v) && side->assumptions().mentions_any(VarSet{v})) {
        throw InterfaceError("'" + v + "' is an output of one viewpoint and constrained as an input by the other");
      }
    }
  }
  std::vector<std::string> inputs;
  append_unique(inputs, c1.inputs(), outs);
  append_unique(inputs, c2.inputs(), outs);
  std::vector<std::string> outputs;
  append_unique(outputs, c1.outputs(), {});
  append_unique(outputs, c2.outputs(), {});

  TermList assumptions = c1.assumptions() + c2.assumptions();
  TermList guarantees = c1.guarantees() + c2.guarantees();
  using Flags = PolyhedralContract::Flags;
  if (!is_satisfiable(assumptions)) {
    return PolyhedralContract(std::move(inputs), std::move(outputs), std::move(assumptions), std::move(guarantees),
                              Flags{false, false});
  }
  assumptions = reduce(assumptions);
  if (!is_satisfiable(assumptions + guarantees)) {
    return PolyhedralContract(std::move(inputs), std::move(outputs), std::move(assumptions), std::move(guarantees),
                              Flags{true, false});
  }
  guarantees = reduce_in_context(guarantees, assumptions);
  return PolyhedralContract(std::move(inputs), std::move(outputs), std::move(assumptions), std::move(guarantees),
                            Flags{true, true});
}

RefinementResult refines(const PolyhedralContract& c1, const PolyhedralContract& c2) {
  for (const auto& v : c2.inputs()) {
    if (!c1.is_input(v)) throw InterfaceError("'" + v + "' is an input of the abstract contract only");
  }
  for (const auto& v : c2.outputs()) {
    if (!c1.is_output(v)) throw InterfaceError("'" + v + "' is an output of the abstract contract only");
  }
  RefinementResult result;
  for (const auto& t : c1.assumptions()) {
    if (!is_implied(t, c2.assumptions())) result.violated_assumptions.push_back(t);
  }
  const TermList context = c2.assumptions() + c1.guarantees();
  for (const auto& t : c2.guarantees()) {
    if (!is_implied(t, context)) result.violated_guarantees.push_back(t);
  }
  result.holds = result.violated_assumptions.empty() && result.violated_guarantees.empty();
  return result;
}

VarRange get_variable_bounds(const PolyhedralContract& c, std::string_view var) {
  if (!c.is_input(var) && !c.is_output(var)) {
    throw InterfaceError("'" + std::string(var) + "' is not a variable of the contract");
  }
  if (!c.is_consistent()) throw InfeasibleRegion();
  return var_bounds(c.assumptions() + c.guarantees(), var);
}

LpOutcome optimize(const PolyhedralContract& c, const LinearExpr& objective, Direction direction) {
  for (const auto& entry : objective.coefficients) {
    if (!c.is_input(entry.first) && !c.is_output(entry.first)) {
      throw InterfaceError("objective mentions '" + entry.first + "', which is not a variable of the contract");
    }
  }
  if (!c.is_consistent()) throw InfeasibleRegion();
  LpOutcome out = lp_optimize(objective, c.assumptions() + c.guarantees(), direction);
  if (out.status == LpStatus::Infeasible) throw InfeasibleRegion();
  return out;
}

}  // namespace cforge
