#include <gtest/gtest.h>

#include "dendro/dendroidal.hpp"
#include "suites.hpp"

using namespace dendro;

namespace {
std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

TEST(Nerve, RepresentableIsHom) {
  auto ts = enumerate_trees(2, 2);
  for (auto& a : ts)
    for (auto& b : ts) EXPECT_EQ(representable(b).dendrices(a).size(), hom(a, b).size()) << a.str() << " " << b.str();
}

TEST(Nerve, ActionIsComposition) {
  auto t = make_ref(parse_tree("r[a,b[c,d]]"));
  auto x = representable(t);
  for (auto& s : enumerate_trees(2, 2)) {
    auto sr = make_ref(s);
    for (auto& d : x.dendrices(s))
      for (auto& f : elementary_faces(sr)) EXPECT_EQ(x.act(f.map, d).colors, compose(as_morphism(sr, x, d), f.map).map);
  }
}

// Simplices of N([2]) of dimension n: monotone sequences of length n+1 in {0,1,2}.
TEST(Nerve, CategoryNerveOnLinearTrees) {
  Nerve<FiniteOperad> n(from_category(FiniteCategory::chain(2)));
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(n.dendrices(Tree::linear(k)).size(), binom(k + 3, 2));
  EXPECT_TRUE(n.dendrices(Tree::corolla(2)).empty());
}

TEST(Nerve, CommutativeNerveIsTerminal) {
  Nerve<CommutativeOperad> n{CommutativeOperad{}};
  for (auto& t : enumerate_trees(3, 2)) EXPECT_EQ(n.dendrices(t).size(), 1u);
}

TEST(Nerve, C2NerveCounts) {
  Nerve<FiniteOperad> n(suites::c2_operad());
  EXPECT_EQ(n.dendrices(Tree::corolla(2)).size(), 2u);
  EXPECT_EQ(n.dendrices(parse_tree("r[a,b[c,d]]")).size(), 0u);
}

TEST(Horn, InnerHornsHaveUniqueFillers) {
  auto x = Nerve<FiniteOperad>(from_category(FiniteCategory::chain(2)));
  auto t = make_ref(Tree::linear(2));
  int inner = t->inner_edges().at(0);
  std::size_t fams = 0;
  for_each_horn_family(x, t, inner, true, [&](const std::vector<Nerve<FiniteOperad>::Dendrex>& f) {
    ++fams;
    EXPECT_EQ(solve_inner_horn(x, HornProblem<Nerve<FiniteOperad>>{t, inner, true, f}).size(), 1u);
  });
  EXPECT_EQ(fams, 10u);  // 2-simplices of N([2]), one per composable pair
}

TEST(Horn, RejectsNonInnerEdge) {
  auto t = make_ref(Tree::corolla(2));
  EXPECT_THROW(horn_faces(t, t->root(), true), Error);
}

TEST(Segal, NervesAreStrictlySegal) {
  Nerve<FiniteOperad> n(suites::c2_operad());
  Nerve<FiniteOperad> c(from_category(FiniteCategory::chain(2)));
  for (auto& tt : enumerate_trees(3, 2)) {
    auto t = make_ref(tt);
    for (int a : t->inner_edges()) {
      EXPECT_TRUE(segal_check(n, t, a).ok) << tt.str();
      EXPECT_TRUE(segal_check(c, t, a).ok) << tt.str();
    }
  }
}

TEST(Presheaf, TruncationValidates) {
  auto x = truncate(representable(Tree::corolla(2)), 2, 2);
  EXPECT_FALSE(x.validate());
  int s = x.shape_of(Tree::corolla(2));
  EXPECT_EQ(x.count(s), 2);
}

TEST(Presheaf, WalkingIsomorphism) {
  auto j = truncate(walking_iso_nerve(), 3, 2);
  EXPECT_FALSE(j.validate());
  EXPECT_EQ(nondegenerate(j, j.shape_of(Tree::corolla(1))).size(), 2u);
}

// Inverting the non-identity arrow of Ω[[1]] glues in a copy of J: the result
// has the two objects and arrows both ways.
TEST(Presheaf, LocalizeInterval) {
  auto x = truncate(representable(Tree::linear(1)), 2, 1);
  int c1 = x.shape_of(Tree::corolla(1)), eta = x.shape_of(Tree::eta());
  int arrow = -1;
  for (int i : nondegenerate(x, c1)) arrow = i;
  ASSERT_GE(arrow, 0);
  auto l = localize_truncated(x, {arrow});
  EXPECT_FALSE(l.validate());
  EXPECT_EQ(l.count(eta), x.count(eta));
  EXPECT_EQ(l.count(c1), 4);
}

TEST(Presheaf, Normality) {
  EXPECT_TRUE(is_normal(representable(Tree::linear(2)), 3, 2));
  EXPECT_FALSE(is_normal(Nerve<CommutativeOperad>{CommutativeOperad{}}, 2, 2));
}

TEST(Homotopy, LastVertexOnChains) {
  auto cat = FiniteCategory::chain(2);
  Nerve<FiniteOperad> n(from_category(cat));
  auto t = Tree::linear(2);
  for (auto& d : n.dendrices(t)) {
    auto c = chain_of(t, d);
    EXPECT_EQ(c.objects.size(), 3u);
    EXPECT_EQ(last_vertex(c), c.objects.back());
    EXPECT_EQ(cat.arrows[last_vertex_arrow(cat, c, 0)].src, c.objects.front());
  }
}
