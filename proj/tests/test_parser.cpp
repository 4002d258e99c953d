#include <gtest/gtest.h>

#include <random>

#include "cforge/parser.hpp"
#include "cforge/polyhedral.hpp"

namespace cforge {
namespace {

TEST(Parser, AbsoluteValueExpands) {
  TermList t = parse_constraints({"|i| <= 2"});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], LinearTerm({{"i", 1.0}}, 2.0));
  EXPECT_EQ(t[1], LinearTerm({{"i", -1.0}}, 2.0));
}

TEST(Parser, ImplicitMultiplicationAndEquality) {
  TermList t = parse_constraints({"o_p - 2i = 1"});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], LinearTerm({{"o_p", 1.0}, {"i", -2.0}}, 1.0, Relation::Eq));
}

TEST(Parser, TautologyIsDroppedByReduce) {
  TermList t = parse_constraints({"0 <= 0"});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t[0].is_trivially_true(1e-7));
  EXPECT_TRUE(reduce(t).empty());
}

TEST(Parser, AcceptsSpacingStylesAndScientificNotation) {
  EXPECT_EQ(parse_constraint("-0.5 i <= 0"), parse_constraint("-0.5i<=0"));
  EXPECT_EQ(parse_constraint("2 i <= 1"), parse_constraint("2*i <= 1"));
  EXPECT_EQ(parse_constraint("x <= 2e3"), TermList{LinearTerm({{"x", 1.0}}, 2000.0)});
  EXPECT_EQ(parse_constraint("2e <= 1"), TermList{LinearTerm({{"e", 2.0}}, 1.0)});
  EXPECT_EQ(parse_constraint("x/4 + (y - 1) * 2 == 3"),
            TermList{LinearTerm({{"x", 0.25}, {"y", 2.0}}, 5.0, Relation::Eq)});
}

TEST(Parser, GeqIsNegated) {
  EXPECT_EQ(parse_constraint("x - y >= 2"), parse_constraint("-(x - y) <= -2"));
  EXPECT_EQ(parse_constraint("soc >= 0"), TermList{LinearTerm({{"soc", -1.0}}, 0.0)});
}

TEST(Parser, NonlinearIsRejected) {
  try {
    parse_constraint("x y <= 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_constraint("x * y <= 1"), ParseError);
  EXPECT_THROW(parse_constraint("1 / x <= 1"), ParseError);
}

TEST(Parser, ErrorsCarryPositionAndExpectedTokens) {
  try {
    parse_constraints({"x <= 1", "x + <= 1"});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_constraint("x <= "), ParseError);
  EXPECT_THROW(parse_constraint("x < 1"), ParseError);
  EXPECT_THROW(parse_constraint("x"), ParseError);
  EXPECT_THROW(parse_constraint("|x| >= 1"), ParseError);
  EXPECT_THROW(parse_constraint("x $ 1"), ParseError);
}

TEST(Parser, Expression) {
  LinearExpr e = parse_expression("soc_1 + 0.5 soc_2 - 3");
  EXPECT_DOUBLE_EQ(e.coefficients.at("soc_2"), 0.5);
  EXPECT_DOUBLE_EQ(e.constant, -3.0);
  EXPECT_THROW(parse_expression("x <= 1"), ParseError);
}

TEST(Render, SugarsAbsolutePairs) {
  EXPECT_EQ(render(parse_constraints({"i <= 2", "-i <= 2"})), std::vector<std::string>{"|i| <= 2"});
}

TEST(Render, AlphabeticalOrder) {
  EXPECT_EQ(render(parse_constraints({"o_p - i <= 0"})), std::vector<std::string>{"-i + o_p <= 0"});
  EXPECT_EQ(render(parse_constraints({"o_p - o = 1"})), std::vector<std::string>{"-o + o_p = 1"});
  EXPECT_EQ(render(parse_constraints({"-0.5 i <= 0"})), std::vector<std::string>{"-0.5 i <= 0"});
  EXPECT_EQ(render(parse_constraints({"i <= 0.19999999999999996"})), std::vector<std::string>{"i <= 0.2"});
}

TEST(Render, ExactStyleKeepsPrecision) {
  const TermList t{LinearTerm({{"x", 1.0 / 3.0}}, 0.1)};
  EXPECT_EQ(parse_constraints(render(t, NumberStyle::Exact)), t);
}

// Random lists with coefficients that survive 6-digit display.
TermList random_terms(std::mt19937_64& rng) {
  const std::vector<std::string> names = {"a", "b_1", "soc", "T_e"};
  std::uniform_int_distribution<int> nterms(1, 5);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  std::uniform_int_distribution<int> pick(0, 3);
  TermList out;
  const int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    Coefficients c;
    const int used = 1 + pick(rng);
    for (int v = 0; v < used; ++v) c[names[pick(rng)]] = coef(rng) / 100.0;
    const Relation rel = pick(rng) == 0 ? Relation::Eq : Relation::Leq;
    LinearTerm t(std::move(c), coef(rng) / 100.0, rel);
    out.push_back(t);
    if (pick(rng) == 0 && rel == Relation::Leq && !t.is_constant()) {
      Coefficients negated = t.coefficients();
      for (auto& entry : negated) entry.second = -entry.second;
      out.push_back(LinearTerm(std::move(negated), t.bound()));
    }
  }
  return out;
}

TEST(RenderProperty, RoundTripRandomTermLists) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const TermList original = random_terms(rng);
    const TermList back = parse_constraints(render(original));
    ASSERT_TRUE(equivalent(original, back)) << "trial " << trial;
    ASSERT_EQ(parse_constraints(render(original, NumberStyle::Exact)).size(), original.size());
  }
}

TEST(ParserProperty, WhitespaceInsensitive) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const TermList original = random_terms(rng);
    for (const std::string& line : render(original, NumberStyle::Exact)) {
      std::string spaced = " ";
      for (char ch : line) {
        spaced += ch == ' ' ? std::string(" \t  ") : std::string(1, ch);
        if (ch == '|' || ch == '(' || ch == '-') spaced += ' ';
      }
      std::string compact;
      for (char ch : line) {
        if (ch != ' ') compact += ch;
      }
      EXPECT_EQ(parse_constraint(spaced), parse_constraint(line)) << spaced;
      EXPECT_EQ(parse_constraint(compact), parse_constraint(line)) << compact;
    }
  }
}

}  // namespace
}  // namespace cforge
