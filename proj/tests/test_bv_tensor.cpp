#include <gtest/gtest.h>

#include "dendro/bv_tensor.hpp"
#include "suites.hpp"

using namespace dendro;
using suites::free_finite;

TEST(Tensor, GridPermutation) {
  EXPECT_EQ(sigma_nm(2, 3), (Perm{0, 2, 4, 1, 3, 5}));
  EXPECT_EQ(sigma_nm(1, 4), identity_perm(4));
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) EXPECT_EQ(perm_inverse(sigma_nm(n, m)), sigma_nm(m, n));
}

TEST(Tensor, ColorsArePairs) {
  TensorOperad t(free_finite(parse_tree("r[a,b]")), free_finite(parse_tree("y[x]")), 8, 2);
  EXPECT_EQ(t.num_colors(), 6);
  for (int c = 0; c < t.num_colors(); ++c) EXPECT_EQ(t.pair(t.p_color(c), t.q_color(c)), c);
  EXPECT_FALSE(t.any_frontier_touched());
}

// 9 unary classes (the product poset on {r,a,b}×{y,x}), 8 binary ones into
// (r,y) and 2 into (r,x).
TEST(Tensor, CorollaTimesIntervalFrozen) {
  TensorOperad t(free_finite(parse_tree("r[a,b]")), free_finite(parse_tree("y[x]")), 8, 2);
  EXPECT_EQ(t.num_classes(), 19u);
  EXPECT_EQ(t.num_words(), 21u);
}

// Categories tensor to their product.
TEST(Tensor, IntervalSquared) {
  auto i = from_category(FiniteCategory::chain(1));
  TensorOperad t(i, i, 8, 1);
  EXPECT_EQ(t.num_classes(), 9u);
  auto c = from_category(FiniteCategory::chain(2));
  TensorOperad t2(c, c, 8, 1);
  std::size_t unary = 0;
  for (auto& [s, v] : t2.signatures())
    if (s.in.size() == 1) unary += v.size();
  EXPECT_EQ(unary, 36u);
}

TEST(Tensor, InterchangeFigure) {
  auto c = suites::interchange_figure(4);
  EXPECT_TRUE(c.ok) << c.witness;
  EXPECT_EQ(c.info["classes_at_signature"], 1);
}

TEST(Tensor, OperadAxiomsOnSmallTensor) {
  TensorOperad t(free_finite(parse_tree("r[a,b]")), free_finite(parse_tree("y[x]")), 8, 2);
  EXPECT_FALSE(check_operad_axioms(t, 2));
}

TEST(Tensor, NerveOfRepresentables) {
  auto trees = enumerate_trees(1, 2);
  for (auto& a : trees)
    for (auto& b : trees)
      for (auto& r : trees) {
        auto rep = compare_tensor_nerve(a, b, r, 6);
        EXPECT_TRUE(rep.agree) << a.str() << " " << b.str() << " " << r.str();
        EXPECT_TRUE(rep.frontier_untouched);
      }
}
