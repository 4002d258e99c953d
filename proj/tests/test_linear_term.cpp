#include <gtest/gtest.h>

#include "cforge/linear_term.hpp"

namespace cforge {
namespace {

TEST(LinearTerm, PrunesZeroCoefficients) {
  LinearTerm t({{"x", 0.0}, {"y", 2.0}}, 1.0);
  EXPECT_EQ(t.coefficients().size(), 1u);
  EXPECT_FALSE(t.mentions("x"));
}

TEST(LinearTerm, EqualityWithNegativeBoundIsNegated) {
  LinearTerm t({{"o", -1.0}, {"o_p", 1.0}}, -1.0, Relation::Eq);
  EXPECT_DOUBLE_EQ(t.bound(), 1.0);
  EXPECT_DOUBLE_EQ(t.coefficient("o"), 1.0);
}

TEST(LinearTerm, EqualityWithZeroBoundHasPositiveLeadingCoefficient) {
  LinearTerm t({{"i", -2.0}, {"o", 1.0}}, 0.0, Relation::Eq);
  EXPECT_DOUBLE_EQ(t.coefficient("i"), 2.0);
  EXPECT_DOUBLE_EQ(t.coefficient("o"), -1.0);
}

TEST(LinearTerm, ConstantTermsAreClassified) {
  EXPECT_TRUE(LinearTerm({}, 0.0).is_trivially_true(1e-7));
  EXPECT_TRUE(LinearTerm({}, -1.0).is_trivially_false(1e-7));
  EXPECT_TRUE(LinearTerm({}, 1.0, Relation::Eq).is_trivially_false(1e-7));
  EXPECT_FALSE(LinearTerm({{"x", 1.0}}, -1.0).is_trivially_false(1e-7));
}

TEST(LinearTerm, CombinedCancelsVariable) {
  LinearTerm a({{"o", 1.0}, {"i", -1.0}}, 0.0);
  LinearTerm b({{"o_p", 1.0}, {"o", -1.0}}, 0.0);
  LinearTerm sum = a.combined(b, 1.0);
  EXPECT_FALSE(sum.mentions("o"));
  EXPECT_DOUBLE_EQ(sum.coefficient("i"), -1.0);
  EXPECT_DOUBLE_EQ(sum.coefficient("o_p"), 1.0);
}

TEST(LinearTerm, ScalingInequalityByNegativeThrows) {
  LinearTerm t({{"x", 1.0}}, 1.0);
  EXPECT_THROW((void)t.scaled(-1.0), std::invalid_argument);
}

TEST(LinearTerm, RenameMergesCoefficients) {
  LinearTerm t({{"a", 1.0}, {"b", 2.0}}, 3.0);
  LinearTerm r = t.renamed({{"a", "b"}});
  EXPECT_DOUBLE_EQ(r.coefficient("b"), 3.0);
  EXPECT_EQ(r.coefficients().size(), 1u);
}

TEST(LinearTerm, EqualityExpandsToTwoInequalities) {
  LinearTerm t({{"x", 1.0}}, 3.0, Relation::Eq);
  auto parts = t.as_inequalities();
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_DOUBLE_EQ(parts[1].coefficient("x"), -1.0);
  EXPECT_DOUBLE_EQ(parts[1].bound(), -3.0);
}

TEST(VarName, Validation) {
  EXPECT_TRUE(is_valid_var_name("soc_1"));
  EXPECT_TRUE(is_valid_var_name("_x"));
  EXPECT_FALSE(is_valid_var_name("1x"));
  EXPECT_FALSE(is_valid_var_name(""));
  EXPECT_FALSE(is_valid_var_name("a-b"));
}

}  // namespace
}  // namespace cforge
