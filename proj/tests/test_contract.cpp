#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "cforge/contract.hpp"
#include "cforge/format.hpp"
#include "cforge/parser.hpp"

namespace cforge {
namespace {

using PC = PolyhedralContract;

PC c1() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - i <= 0", "i - 2o <= 2"}); }
PC c2() { return PC::from_strings({"o"}, {"o_p"}, {"o <= 0.2", "-o <= 1"}, {"o_p - o <= 0"}); }
PC c1n() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"|o| <= 3"}); }
PC c_top() { return PC::from_strings({"i"}, {"o_p"}, {"|i| <= 1"}, {"o_p - 2i = 1"}); }
PC c_partial() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - 2i = 0"}); }
PC funct_vp() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - 2i = 1"}); }
PC pwr_vp() { return PC::from_strings({"temp"}, {"P"}, {"temp <= 90"}, {"P <= 2.1"}); }

bool mutually_refine(const PC& a, const PC& b) { return refines(a, b).holds && refines(b, a).holds; }

TEST(Contract, Construction) {
  const PC c = c1();
  EXPECT_TRUE(c.is_compatible());
  EXPECT_TRUE(c.is_consistent());
  EXPECT_THROW(PC::from_strings({"i"}, {"o"}, {"o <= 1"}, {}), InterfaceError);
  EXPECT_THROW(PC::from_strings({"i"}, {"i"}, {}, {}), InterfaceError);
  EXPECT_THROW(PC::from_strings({"i"}, {"o"}, {}, {"z <= 1"}), InterfaceError);
  EXPECT_THROW(PC::from_strings({"1i"}, {"o"}, {}, {}), InterfaceError);
  const PC vacuous = PC::from_strings({"i"}, {"o"}, {}, {});
  EXPECT_TRUE(vacuous.is_consistent());
  EXPECT_TRUE(mutually_refine(vacuous, PC::from_strings({"i"}, {"o"}, {"0 <= 1"}, {"0 <= 0"})));
}

TEST(Contract, IncompatibleIsFlaggedNotRejected) {
  const PC c = PC::from_strings({"x"}, {}, {"x <= 1", "x >= 2"}, {});
  EXPECT_FALSE(c.is_compatible());
  EXPECT_FALSE(c.is_consistent());
}

TEST(Compose, SeriesExample) {
  const auto start = std::chrono::steady_clock::now();
  const PC sys = compose(c1(), c2());
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(ms, 50.0);
  EXPECT_EQ(sys.inputs(), std::vector<std::string>{"i"});
  EXPECT_EQ(sys.outputs(), std::vector<std::string>{"o_p"});
  EXPECT_EQ(render(sys.assumptions()), (std::vector<std::string>{"i <= 0.2", "-0.5 i <= 0"}));
  EXPECT_EQ(render(sys.guarantees()), std::vector<std::string>{"-i + o_p <= 0"});
  EXPECT_EQ(format_contract(sys),
            "InVars: [i]\nOutVars:[o_p]\nA: [\n    i <= 0.2\n    -0.5 i <= 0\n]\nG: [\n    -i + o_p <= 0\n]\n");
}

TEST(Compose, OrderOfOperandsDoesNotMatter) { EXPECT_TRUE(mutually_refine(compose(c1(), c2()), compose(c2(), c1()))); }

TEST(Compose, DiagnosticWhenGuaranteesTooWeak) {
  try {
    compose(c1n(), c2());
    FAIL() << "expected IncompatibilityError";
  } catch (const IncompatibilityError& e) {
    const auto& d = e.diagnostic();
    EXPECT_EQ(d.variables, VarSet{"o"});
    EXPECT_TRUE(equivalent(d.failed_terms, parse_constraints({"o <= 0.2", "-o <= 1"})));
    EXPECT_TRUE(equivalent(d.context_terms, parse_constraints({"|o| <= 3"})));
    const std::string msg = e.what();
    EXPECT_EQ(msg.rfind("Could not eliminate variables ['o']", 0), 0u) << msg;
    EXPECT_NE(msg.find("|o| <= 3"), std::string::npos);
  }
}

TEST(Compose, WithIdentityRenamesOutput) {
  const PC id = PC::from_strings({"o"}, {"o_p"}, {}, {"o_p - o = 0"});
  const PC sys = compose(c1(), id);
  EXPECT_TRUE(mutually_refine(sys, c1().renamed({{"o", "o_p"}})));
}

TEST(Compose, KeepRetainsConnectedVariable) {
  const PC sys = compose(c1(), c2(), {"o"});
  EXPECT_EQ(sys.outputs(), (std::vector<std::string>{"o", "o_p"}));
  EXPECT_TRUE(sys.guarantees().variables().contains("o"));
}

TEST(Compose, InterfaceErrors) {
  EXPECT_THROW(compose(c1(), c1n()), InterfaceError);
  const PC back = PC::from_strings({"o"}, {"i"}, {}, {"i - o <= 0"});
  EXPECT_THROW(compose(c1(), back), InterfaceError);
}

TEST(TransformSufficient, Examples) {
  const TermList ctx = parse_constraints({"o - i <= 0", "i - 2o <= 2"});
  EXPECT_EQ(render(transform_sufficient(parse_constraint("o <= 0.2")[0], {"o"}, ctx)),
            std::vector<std::string>{"i <= 0.2"});
  EXPECT_EQ(render(transform_sufficient(parse_constraint("-o <= 1")[0], {"o"}, ctx)),
            std::vector<std::string>{"-0.5 i <= 0"});
  EXPECT_THROW(transform_sufficient(parse_constraint("o <= 0.2")[0], {"o"}, parse_constraints({"|o| <= 3"})),
               DischargeFailure);
}

TEST(TransformSufficient, PrefersVariableBearingCandidates) {
  // -s1 <= 0 is discharged by the row s1 >= 0 alone, but the consumption row
  // yields the condition on the entry charge.
  const TermList ctx = parse_constraints({"s0 - s1 <= 5 t", "s1 >= 0"});
  const TermList out = transform_sufficient(parse_constraint("s1 >= 0")[0], {"s1"}, ctx);
  EXPECT_TRUE(equivalent(out, parse_constraints({"s0 - 5 t >= 0"})));
}

TEST(Quotient, MissingComponent) {
  const PC q = quotient(c_top(), c_partial());
  EXPECT_EQ(q.inputs(), std::vector<std::string>{"o"});
  EXPECT_EQ(q.outputs(), std::vector<std::string>{"o_p"});
  EXPECT_TRUE(equivalent(q.assumptions(), parse_constraints({"|o| <= 2"})));
  EXPECT_TRUE(equivalent(q.guarantees(), parse_constraints({"o_p - o = 1"})));
  EXPECT_EQ(render(q.assumptions()), std::vector<std::string>{"|o| <= 2"});
  EXPECT_EQ(render(q.guarantees()), std::vector<std::string>{"-o + o_p = 1"});
  EXPECT_TRUE(refines(compose(c_partial(), q), c_top()).holds);
}

TEST(Quotient, ByIdentityOnInputs) {
  const PC top = c1();
  const PC id = PC::from_strings({"i"}, {"i_p"}, {}, {"i_p - i = 0"});
  const PC q = quotient(top, id);
  EXPECT_TRUE(mutually_refine(q, top.renamed({{"i", "i_p"}})));
}

TEST(Quotient, RejectsForeignInputs) {
  const PC foreign = PC::from_strings({"z"}, {"o"}, {}, {"o - z = 0"});
  EXPECT_THROW(quotient(c_top(), foreign), InterfaceError);
}

TEST(Merge, Viewpoints) {
  const PC m = merge(funct_vp(), pwr_vp());
  EXPECT_EQ(m.inputs(), (std::vector<std::string>{"i", "temp"}));
  EXPECT_EQ(m.outputs(), (std::vector<std::string>{"o", "P"}));
  EXPECT_EQ(render(m.assumptions()), (std::vector<std::string>{"|i| <= 2", "temp <= 90"}));
  EXPECT_EQ(render(m.guarantees()), (std::vector<std::string>{"-2 i + o = 1", "P <= 2.1"}));
}

TEST(Merge, IdempotentAndCommutative) {
  EXPECT_TRUE(mutually_refine(merge(c1(), c1()), c1()));
  const PC a = merge(funct_vp(), pwr_vp());
  const PC b = merge(pwr_vp(), funct_vp());
  EXPECT_TRUE(equivalent(a.assumptions(), b.assumptions()));
  EXPECT_TRUE(equivalent(a.guarantees(), b.guarantees()));
}

TEST(Merge, IncompatibleAssumptionsAreFlagged) {
  const PC m = merge(PC::from_strings({"x"}, {}, {"x <= 1"}, {}), PC::from_strings({"x"}, {}, {"-x <= -2"}, {}));
  EXPECT_FALSE(m.is_compatible());
  EXPECT_FALSE(m.is_consistent());
}

TEST(Merge, SharedOutputsConjoinGuarantees) {
  const PC m = merge(PC::from_strings({"x"}, {"y"}, {}, {"y <= x"}), PC::from_strings({"x"}, {"y"}, {}, {"y >= 0"}));
  EXPECT_EQ(m.outputs(), std::vector<std::string>{"y"});
  EXPECT_EQ(m.guarantees().size(), 2u);
}

TEST(Refines, Examples) {
  EXPECT_TRUE(refines(c1(), c1()).holds);
  const PC abstract = PC::from_strings({"i"}, {"o_p"}, {"i <= 0.1", "-i <= 0"}, {"o_p - i <= 1"});
  EXPECT_TRUE(refines(compose(c1(), c2()), abstract).holds);
  const RefinementResult r = refines(c1n(), c1());
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.violated_assumptions.empty());
  EXPECT_EQ(r.violated_guarantees, parse_constraints({"o - i <= 0", "i - 2o <= 2"}));
  EXPECT_THROW(refines(c1(), c2()), InterfaceError);
}

TEST(Bounds, Examples) {
  const VarRange r = get_variable_bounds(compose(c1(), c2()), "o_p");
  EXPECT_TRUE(std::isinf(r.lower) && r.lower < 0);
  EXPECT_NEAR(r.upper, 0.2, 1e-9);
  const VarRange p = get_variable_bounds(merge(funct_vp(), pwr_vp()), "P");
  EXPECT_TRUE(std::isinf(p.lower));
  EXPECT_NEAR(p.upper, 2.1, 1e-9);
  const VarRange x = get_variable_bounds(PC::from_strings({}, {"x"}, {}, {"x = 5"}), "x");
  EXPECT_NEAR(x.lower, 5.0, 1e-9);
  EXPECT_NEAR(x.upper, 5.0, 1e-9);
  EXPECT_THROW(get_variable_bounds(c1(), "zz"), InterfaceError);
  EXPECT_THROW(get_variable_bounds(PC::from_strings({}, {"x"}, {}, {"x <= 1", "x >= 2"}), "x"), InfeasibleRegion);
}

TEST(Optimize, Examples) {
  EXPECT_NEAR(*optimize(compose(c1(), c2()), parse_expression("i"), Direction::Max).value, 0.2, 1e-9);
  EXPECT_NEAR(*optimize(c1(), parse_expression("7"), Direction::Min).value, 7.0, 1e-12);
  EXPECT_NEAR(*optimize(merge(funct_vp(), pwr_vp()), parse_expression("o - 2i"), Direction::Min).value, 1.0, 1e-9);
  EXPECT_EQ(optimize(c1(), parse_expression("o"), Direction::Min).status, LpStatus::Optimal);
  EXPECT_EQ(optimize(merge(funct_vp(), pwr_vp()), parse_expression("P"), Direction::Min).status, LpStatus::Unbounded);
}

// ---- Property suites -------------------------------------------------------

struct ContractGen {
  std::mt19937_64 rng;
  explicit ContractGen(unsigned seed) : rng(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::string term(const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& v : vars) {
      const int c = pick(-3, 3);
      if (c == 0) continue;
      out += (c < 0 ? " - " : " + ") + std::to_string(std::abs(c)) + " " + v;
    }
    if (out.empty()) out = " + 1 " + vars.front();
    return out + " <= " + std::to_string(pick(0, 4));
  }

  std::vector<std::string> terms(const std::vector<std::string>& vars, int n) {
    std::vector<std::string> out;
    for (int k = 0; k < n; ++k) out.push_back(term(vars));
    return out;
  }
};

std::vector<double> grid() {
  std::vector<double> out;
  for (double v = -3.0; v <= 3.0; v += 0.5) out.push_back(v);
  return out;
}

TEST(ComposeProperty, SoundnessSamplingOracle) {
  ContractGen gen(31);
  int checked = 0;
  int attempts = 0;
  std::vector<std::pair<PC, PC>> pairs = {{c1(), c2()}};
  while (pairs.size() < 101 && attempts < 5000) {
    ++attempts;
    PC a = PC::from_strings({"x"}, {"m"}, {"|x| <= " + std::to_string(gen.pick(1, 3))},
                            gen.terms({"x", "m"}, gen.pick(1, 3)));
    PC b = PC::from_strings({"m"}, {"z"}, gen.terms({"m"}, gen.pick(0, 2)), gen.terms({"m", "z"}, gen.pick(1, 3)));
    if (!a.is_consistent() || !b.is_consistent()) continue;
    pairs.emplace_back(std::move(a), std::move(b));
  }
  ASSERT_EQ(pairs.size(), 101u);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [a, b] = pairs[k];
    const std::string up_out = a.outputs().front();
    const std::string up_in = a.inputs().front();
    const std::string down_out = b.outputs().front();
    PC sys;
    try {
      sys = compose(a, b);
    } catch (const IncompatibilityError&) {
      continue;
    }
    ++checked;
    const TermList g_all = sys.assumptions() + a.guarantees() + b.guarantees();
    const TermList a_and_g1 = sys.assumptions() + a.guarantees();
    for (double x : grid()) {
      for (double m : grid()) {
        for (double z : grid()) {
          const Assignment p{{up_in, x}, {up_out, m}, {down_out, z}};
          if (g_all.satisfied_by(p, 1e-6)) {
            ASSERT_TRUE(sys.guarantees().satisfied_by(p, 1e-6)) << "pair " << k;
          }
          if (a_and_g1.satisfied_by(p, 1e-6)) {
            ASSERT_TRUE(b.assumptions().satisfied_by(p, 1e-6)) << "pair " << k;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(ComposeProperty, Commutative) {
  ContractGen gen(77);
  int compared = 0;
  for (int k = 0; k < 60; ++k) {
    PC a = PC::from_strings({"x"}, {"m"}, {"|x| <= 2"}, gen.terms({"x", "m"}, 2));
    PC b = PC::from_strings({"m"}, {"z"}, gen.terms({"m"}, 1), gen.terms({"m", "z"}, 2));
    try {
      const PC ab = compose(a, b);
      const PC ba = compose(b, a);
      EXPECT_TRUE(mutually_refine(ab, ba)) << k;
      ++compared;
    } catch (const IncompatibilityError&) {
    }
  }
  EXPECT_GT(compared, 10);
}

TEST(RefinesProperty, TransitiveOnRelaxTightenChains) {
  ContractGen gen(5);
  for (int k = 0; k < 50; ++k) {
    // Start abstract, then tighten G and relax A twice.
    const int bound = gen.pick(1, 4);
    const PC c3 = PC::from_strings({"x"}, {"y"}, {"|x| <= " + std::to_string(bound)},
                                   {"y - x <= " + std::to_string(gen.pick(3, 6))});
    const PC c2r = PC::from_strings({"x"}, {"y"}, {"|x| <= " + std::to_string(bound + 1)},
                                    {"y - x <= 2", gen.term({"x", "y"})});
    const PC c1r = PC::from_strings({"x"}, {"y"}, {"|x| <= " + std::to_string(bound + 2)},
                                    {"y - x <= 1", gen.term({"x", "y"}), gen.term({"x", "y"})});
    EXPECT_TRUE(refines(c3, c3).holds);
    const bool r21 = refines(c2r, c3).holds;
    const bool r12 = refines(c1r, c2r).holds;
    if (r21 && r12) EXPECT_TRUE(refines(c1r, c3).holds) << k;
  }
}

TEST(BoundsProperty, RefinementNarrowsLpBounds) {
  // For refines(c1, c2): bounds over A2 + G1 lie within bounds over A2 + G2.
  const PC abstract = PC::from_strings({"i"}, {"o_p"}, {"i <= 0.1", "-i <= 0"}, {"o_p - i <= 1", "o_p >= -5"});
  const PC concrete = PC::from_strings({"i"}, {"o_p"}, {"|i| <= 1"}, {"o_p - i <= 0", "o_p >= -1"});
  ASSERT_TRUE(refines(concrete, abstract).holds);
  const VarRange inner = var_bounds(abstract.assumptions() + concrete.guarantees(), "o_p");
  const VarRange outer = var_bounds(abstract.assumptions() + abstract.guarantees(), "o_p");
  EXPECT_GE(inner.lower, outer.lower - 1e-9);
  EXPECT_LE(inner.upper, outer.upper + 1e-9);
}

TEST(QuotientProperty, DefiningPropertyHoldsWheneverReturned) {
  ContractGen gen(13);
  int returned = 0;
  for (int k = 0; k < 60; ++k) {
    const PC top = PC::from_strings({"x"}, {"z"}, {"|x| <= 1"}, {"z - " + std::to_string(gen.pick(1, 3)) + " x = 0"});
    const PC part = PC::from_strings({"x"}, {"m"}, {"|x| <= 2"}, {"m - " + std::to_string(gen.pick(1, 3)) + " x = 0"});
    try {
      const PC q = quotient(top, part);
      EXPECT_TRUE(refines(compose(part, q), top).holds);
      ++returned;
    } catch (const QuotientUnsound&) {
    }
  }
  EXPECT_GT(returned, 0);
}

}  // namespace
}  // namespace cforge
