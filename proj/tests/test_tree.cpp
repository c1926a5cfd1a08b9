#include <gtest/gtest.h>

#include "dendro/tree.hpp"
#include "suites.hpp"

using namespace dendro;

TEST(Tree, ParsePrintRoundTrip) {
  for (const char* s : {"e", "r[]", "r[a]", "r[a,b]", "r[a,b[c,d]]", "r[a[],b]"}) {
    Tree t = parse_tree(s);
    EXPECT_EQ(parse_tree(t.str()), t) << s;
  }
}

TEST(Tree, BasicShape) {
  Tree t = parse_tree("r[a,b[c,d]]");
  EXPECT_EQ(t.size(), 5u);
  EXPECT_EQ(t.num_vertices(), 2);
  EXPECT_EQ(t.leaves().size(), 3u);
  EXPECT_EQ(t.inner_edges().size(), 1u);
  EXPECT_EQ(t.max_arity(), 2);
  EXPECT_TRUE(t.leq(t.edge("c"), t.edge("b")));
  EXPECT_FALSE(t.comparable(t.edge("a"), t.edge("c")));
  Tree s = parse_tree("r[a[],b]");
  EXPECT_TRUE(s.is_stump(s.edge("a")));
  EXPECT_FALSE(s.is_leaf(s.edge("a")));
}

TEST(Tree, RejectsMalformed) {
  EXPECT_THROW(parse_tree("r[a,a]"), Error);
  EXPECT_THROW(parse_tree("r[a"), Error);
  EXPECT_THROW(parse_tree(""), Error);
}

TEST(Tree, CanonicalFormIsIsomorphismInvariant) {
  Tree a = parse_tree("r[x,y[p,q]]"), b = parse_tree("s[u[v,w],z]");
  EXPECT_TRUE(is_isomorphic(a, b));
  EXPECT_EQ(canonical_tree(a).str(), canonical_tree(b).str());
  EXPECT_EQ(canonical_tree(canonical_tree(a)), canonical_tree(a));
  EXPECT_FALSE(is_isomorphic(parse_tree("r[a,b]"), parse_tree("r[a[b]]")));
}

// Trees of arity <= 1 with <= v vertices: the linear trees [0..v] and the
// v linear trees topped by a stump.
TEST(Tree, EnumerationUnaryClosedForm) {
  for (int v = 0; v <= 6; ++v) EXPECT_EQ(enumerate_trees(v, 1).size(), static_cast<std::size_t>(2 * v + 1)) << v;
}

TEST(Tree, EnumerationCountsFrozen) {
  std::vector<std::size_t> ar2{4, 10, 28, 82, 265}, plain{3, 7, 18, 48, 140}, ar3{5, 17, 73, 357, 1933};
  for (int v = 1; v <= 5; ++v) {
    EXPECT_EQ(enumerate_trees(v, 2).size(), ar2[v - 1]);
    EXPECT_EQ(enumerate_trees(v, 2, false).size(), plain[v - 1]);
    EXPECT_EQ(enumerate_trees(v, 3).size(), ar3[v - 1]);
  }
}

TEST(Tree, EnumerationHasNoDuplicates) {
  std::set<std::string> codes;
  auto ts = enumerate_trees(4, 2);
  for (auto& t : ts) codes.insert(tree_code(t));
  EXPECT_EQ(codes.size(), ts.size());
}

TEST(Tree, SubtreesMatchOracle) {
  for (auto& t : enumerate_trees(3, 3)) {
    auto oracle = suites::subtree_oracle(t);
    std::map<std::pair<int, int>, std::uint64_t> mine;
    for (auto& s : enumerate_subtrees(t)) mine[{s.root, static_cast<int>(s.leaves.size())}] += suites::factorial(static_cast<int>(s.leaves.size()));
    EXPECT_EQ(mine, oracle) << t.str();
  }
}

TEST(Tree, SpansSubtree) {
  Tree t = parse_tree("r[a,b[c,d]]");
  EXPECT_TRUE(spans(t, t.root(), std::vector<int>{t.edge("a"), t.edge("c"), t.edge("d")}));
  EXPECT_TRUE(spans(t, t.root(), std::vector<int>{t.edge("a"), t.edge("b")}));
  EXPECT_FALSE(spans(t, t.root(), std::vector<int>{t.edge("a"), t.edge("c")}));
  EXPECT_FALSE(spans(t, t.root(), std::vector<int>{t.edge("b"), t.edge("c")}));
}

TEST(Tree, GraftingAndJoin) {
  Tree g = graft(parse_tree("r[a,b]"), "b", parse_tree("b[c,d]"));
  EXPECT_TRUE(is_isomorphic(g, parse_tree("r[a,b[c,d]]")));
  auto j = join_eta(parse_tree("r[a,b]"));
  EXPECT_EQ(j.tree.num_vertices(), 2);
  EXPECT_EQ(j.tree.name(j.tree.root()), "r_j");
  EXPECT_TRUE(j.tree.is_inner(j.tree.edge("r")));
}
