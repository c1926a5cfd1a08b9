#include <gtest/gtest.h>

#include "dendro/algebra.hpp"
#include "suites.hpp"

using namespace dendro;

namespace {
std::size_t count_lc(const FiniteOperad& p, const std::vector<FinSetAlgebra>& v, const std::vector<int>& s) {
  std::size_t n = 0;
  for (auto& a : v) n += is_locally_constant(p, a, s);
  return n;
}
}  // namespace

TEST(Algebra, IntervalCounts) {
  auto p = from_category(FiniteCategory::chain(1));
  int f = suites::nonidentity_unary(p);
  auto a2 = enumerate_algebras(p, 2);
  EXPECT_EQ(a2.size(), 8u);
  EXPECT_EQ(count_lc(p, a2, {f}), 3u);
  auto a3 = enumerate_algebras(p, 3);
  EXPECT_EQ(a3.size(), 56u);
  EXPECT_EQ(count_lc(p, a3, {f}), 9u);
  for (auto& a : a3) EXPECT_FALSE(check_algebra(p, a));
}

TEST(Algebra, TrivialOperad) {
  auto p = from_category(FiniteCategory::chain(0));
  EXPECT_EQ(enumerate_algebras(p, 1).size(), 1u);
  EXPECT_EQ(enumerate_algebras(p, 3).size(), 3u);
}

// A binary operation sr^(sa*sb) ways for each choice of carriers.
TEST(Algebra, CorollaCount) {
  auto p = suites::c2_operad();
  std::size_t oracle = 0;
  for (int sr = 1; sr <= 2; ++sr)
    for (int sa = 1; sa <= 2; ++sa)
      for (int sb = 1; sb <= 2; ++sb) {
        std::size_t n = 1;
        for (int i = 0; i < sa * sb; ++i) n *= sr;
        oracle += n;
      }
  EXPECT_EQ(enumerate_algebras(p, 2).size(), oracle);
  EXPECT_EQ(oracle, 30u);
}

TEST(Algebra, LocalConstancyEdgeCases) {
  auto p = suites::c2_operad();
  auto a = enumerate_algebras(p, 1).at(0);
  EXPECT_TRUE(is_locally_constant(p, a, {}));
  int bin = -1;
  for (int o = 0; o < p.num_ops(); ++o)
    if (p.inputs(o).size() == 2) bin = o;
  ASSERT_GE(bin, 0);
  EXPECT_THROW(is_locally_constant(p, a, {bin}), Error);
}

TEST(Algebra, IsoInvariance) {
  auto p = from_category(FiniteCategory::chain(1));
  int f = suites::nonidentity_unary(p);
  for (auto& a : enumerate_algebras(p, 3))
    for (auto& s0 : all_perms(a.carrier[0]))
      for (auto& s1 : all_perms(a.carrier[1])) {
        auto b = relabel_algebra(p, a, {s0, s1});
        ASSERT_FALSE(check_algebra(p, b));
        EXPECT_EQ(is_locally_constant(p, a, {f}), is_locally_constant(p, b, {f}));
      }
}

TEST(Algebra, LayerSuite) {
  auto c = suites::locally_constant_layer(3);
  EXPECT_TRUE(c.ok) << c.witness;
  auto d = suites::pullback_locally_constant(2);
  EXPECT_TRUE(d.ok) << d.witness;
}

TEST(Algebra, RootArrows) {
  Nerve<FiniteOperad> x(suites::c2_operad());
  auto c1 = corolla_one();
  auto s = x.dendrices(*c1);
  auto rs = s_over(x, s);
  ASSERT_EQ(rs.size(), s.size());
  for (auto& r : rs) {
    EXPECT_EQ(r.incl.src->num_vertices(), 0);
    EXPECT_EQ(r.source.colors.at(0), r.target.colors.at(c1->root()));
  }
}
