#include <gtest/gtest.h>

#include "dendro/operad.hpp"
#include "dendro/dendroidal.hpp"
#include "suites.hpp"

using namespace dendro;

TEST(Operad, FreeOperadAxioms) {
  for (auto& t : enumerate_trees(3, 2)) EXPECT_FALSE(check_operad_axioms(TreeOperad(t), static_cast<int>(t.size()))) << t.str();
}

TEST(Operad, FreeOperadOperations) {
  TreeOperad p(parse_tree("r[a,b[c,d]]"));
  int r = p.tree().edge("r");
  EXPECT_EQ(p.ops_into(r, 3).size(), 6u);  // (a,c,d;r) in every order
  EXPECT_EQ(p.ops_into(r, 2).size(), 2u);
  EXPECT_EQ(p.ops_into(r, 1).size(), 1u);
  EXPECT_TRUE(p.ops({p.tree().edge("a"), p.tree().edge("c")}, r).empty());
}

TEST(Operad, MaterializedIsValid) {
  auto c2 = suites::c2_operad();
  EXPECT_NO_THROW(c2.validate());
  EXPECT_EQ(c2.num_ops(), 5);  // three units and the two orders of the vertex
  EXPECT_NO_THROW(materialize(TreeOperad(parse_tree("r[a,b[c,d]]")), 5).validate());
}

TEST(Operad, CategoryAsOperad) {
  auto p = from_category(FiniteCategory::chain(2));
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.num_ops(), 6);
  auto leq = object_poset(p, 1);
  EXPECT_TRUE(leq[0][2]);
  EXPECT_FALSE(leq[2][0]);
}

TEST(Operad, SigmaFreeness) {
  EXPECT_TRUE(is_sigma_free(TreeOperad(parse_tree("r[a,b,c]")), 3));
  auto r = sigma_free_report(CommutativeOperad(), 3);
  EXPECT_FALSE(r.free);
  EXPECT_FALSE(r.witness.empty());
}

TEST(Operad, CommutativeAxioms) { EXPECT_FALSE(check_operad_axioms(CommutativeOperad(), 4)); }

TEST(Operad, MissingCompositionRejected) {
  FiniteOperad p;
  int x = p.add_color("x");
  int f = p.add_op("f", {x}, x);
  p.add_missing_units();
  EXPECT_THROW(p.validate(), Error);
  p.set_comp(f, 0, f, f);
  EXPECT_NO_THROW(p.validate());
}

// Functors [1] -> [1] are the monotone maps of {0,1}: three of them.
TEST(Operad, EnumerateMorphismsOfChains) {
  auto p = from_category(FiniteCategory::chain(1));
  EXPECT_EQ(enumerate_morphisms(p, p).size(), 3u);
  for (auto& m : enumerate_morphisms(p, p)) EXPECT_FALSE(check_morphism(p, p, m));
  auto q = from_category(FiniteCategory::chain(2));
  EXPECT_EQ(enumerate_morphisms(p, q).size(), 6u);
}

TEST(Operad, UnderlyingCategoryOfChain) {
  auto c = underlying_category(from_category(FiniteCategory::chain(2)));
  EXPECT_EQ(c.objects.size(), 3u);
  EXPECT_EQ(c.arrows.size(), 6u);
  EXPECT_NO_THROW(c.validate());
}
