#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cforge/errors.hpp"
#include "cforge/linear_term.hpp"
#include "cforge/lp.hpp"
#include "cforge/polyhedral.hpp"

namespace cforge {

/// Assume-guarantee contract with polyhedral assumptions and guarantees.
///
/// Construction validates the interface and computes the compatibility and
/// consistency flags; an incompatible contract is still a valid value.
class PolyhedralContract {
 public:
  PolyhedralContract() : PolyhedralContract({}, {}, {}, {}) {}
  PolyhedralContract(std::vector<std::string> inputs, std::vector<std::string> outputs, TermList assumptions,
                     TermList guarantees);

  static PolyhedralContract from_strings(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                         const std::vector<std::string>& assumptions,
                                         const std::vector<std::string>& guarantees);

  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  const std::vector<std::string>& outputs() const noexcept { return outputs_; }
  const TermList& assumptions() const noexcept { return assumptions_; }
  const TermList& guarantees() const noexcept { return guarantees_; }

  VarSet input_set() const { return VarSet(inputs_.begin(), inputs_.end()); }
  VarSet output_set() const { return VarSet(outputs_.begin(), outputs_.end()); }
  bool is_input(std::string_view v) const;
  bool is_output(std::string_view v) const;

  /// Assumptions satisfiable.
  bool is_compatible() const noexcept { return compatible_; }
  /// Assumptions and guarantees jointly satisfiable.
  bool is_consistent() const noexcept { return consistent_; }

  /// Renames variables everywhere. Names absent from the map are kept.
  PolyhedralContract renamed(const RenameMap& names) const;

  friend bool operator==(const PolyhedralContract& a, const PolyhedralContract& b) {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.assumptions_ == b.assumptions_ &&
           a.guarantees_ == b.guarantees_;
  }

 private:
  struct Flags {
    bool compatible;
    bool consistent;
  };
  PolyhedralContract(std::vector<std::string> inputs, std::vector<std::string> outputs, TermList assumptions,
                     TermList guarantees, Flags flags);
  void validate() const;

  friend PolyhedralContract merge(const PolyhedralContract&, const PolyhedralContract&);

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  TermList assumptions_;
  TermList guarantees_;
  bool compatible_ = true;
  bool consistent_ = true;
};

struct IncompatibilityDiagnostic {
  TermList failed_terms;
  TermList context_terms;
  VarSet variables;

  std::string message() const;
};

/// Raised by compose when an assumption of the downstream contract cannot be
/// discharged through the upstream guarantees.
class IncompatibilityError : public Error {
 public:
  explicit IncompatibilityError(IncompatibilityDiagnostic diagnostic);
  const IncompatibilityDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  IncompatibilityDiagnostic diagnostic_;
};

class DischargeFailure : public Error {
 public:
  using Error::Error;
};

/// Replaces `term` by a sufficient condition free of `drop`, substituting
/// bounding rows of `context` one variable at a time.
TermList transform_sufficient(const LinearTerm& term, const VarSet& drop, const TermList& context);

/// Series composition. Connected variables are eliminated unless listed in `keep`.
PolyhedralContract compose(const PolyhedralContract& c1, const PolyhedralContract& c2, const VarSet& keep = {});

PolyhedralContract quotient(const PolyhedralContract& top, const PolyhedralContract& partial);

/// Viewpoint conjunction. A variable may be an output of both operands; its
/// guarantees are conjoined.
PolyhedralContract merge(const PolyhedralContract& c1, const PolyhedralContract& c2);

struct RefinementResult {
  bool holds = true;
  TermList violated_assumptions;  // terms of c1's A not implied by c2's A
  TermList violated_guarantees;   // terms of c2's G not implied by c2's A and c1's G

  explicit operator bool() const noexcept { return holds; }
};

/// Does c1 refine c2? Every variable of c2 must appear in c1 with the same role.
RefinementResult refines(const PolyhedralContract& c1, const PolyhedralContract& c2);

VarRange get_variable_bounds(const PolyhedralContract& c, std::string_view var);

/// LP over A and G. Throws InfeasibleRegion for inconsistent contracts.
LpOutcome optimize(const PolyhedralContract& c, const LinearExpr& objective, Direction direction);

}  // namespace cforge
