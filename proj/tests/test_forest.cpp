#include <gtest/gtest.h>

#include "dendro/forest.hpp"
#include "suites.hpp"

using namespace dendro;

namespace {
ForestMorphism single(const std::string& s, const std::string& t, const std::map<std::string, std::string>& m) {
  return forest_morphism(morphism_by_names(make_ref(parse_tree(s)), make_ref(parse_tree(t)), m));
}
}  // namespace

TEST(Forest, ParseAndSum) {
  auto f = parse_forest("r[a,b] + e");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.num_edges(), 4u);
  EXPECT_EQ(direct_sum(f, parse_forest("x[y]")).size(), 3u);
}

TEST(Forest, RootFaceIsWideAndIndependent) {
  auto rf = forest_root_face(parse_forest("e + e"));
  EXPECT_EQ(rf.tree->num_vertices(), 1);
  EXPECT_TRUE(is_valid(rf.incl));
  EXPECT_TRUE(is_independent(rf.incl));
  EXPECT_TRUE(is_wide(rf.incl));
  EXPECT_EQ(decompose_wide_independent(rf.incl).num_generators(), 1u);
}

TEST(Forest, RootPreservingIsWide) {
  auto f = single("r[a]", "r[a,b[c,d]]", {{"r", "r"}, {"a", "a"}});
  EXPECT_FALSE(is_valid(f));  // r[a] cannot hit a vertex of arity 2 alone
  auto g = single("r[a,b]", "r[a,b[c,d]]", {{"r", "r"}, {"a", "a"}, {"b", "b"}});
  EXPECT_TRUE(is_valid(g));
  EXPECT_TRUE(is_wide(g));
  EXPECT_TRUE(wide_lemma_check(g));
}

TEST(Forest, LeafInclusionIsNotWide) {
  auto f = single("e", "r[a,b]", {{"e", "a"}});
  EXPECT_TRUE(is_independent(f));
  EXPECT_FALSE(is_wide(f));
  EXPECT_FALSE(wide_lemma_check(f));
}

// With a stump the two criteria part ways: b alone spans r[a[],b], while the
// path through the stump a misses b.
TEST(Forest, StumpSeparatesWidenessCriteria) {
  auto f = single("e", "r[a[],b]", {{"e", "b"}});
  EXPECT_TRUE(is_independent(f));
  EXPECT_TRUE(wide_lemma_check(f));
  EXPECT_FALSE(is_wide(f));
}

TEST(Forest, Dependence) {
  auto t = make_ref(parse_tree("r[a,b[c,d]]"));
  auto e = make_ref(Tree::eta());
  ForestMorphism f{parse_forest("e + e"), forest_of(t), {0, 0},
                   {morphism_by_names(e, t, {{"e", "b"}}), morphism_by_names(e, t, {{"e", "c"}})}};
  EXPECT_TRUE(is_valid(f));
  EXPECT_FALSE(is_independent(f));
}

TEST(Forest, SmallSweepFrozen) {
  auto v = suites::forests_suite_at(3, 3);
  EXPECT_EQ(v[0].info["independent_maps"], 89);
  EXPECT_EQ(v[0].info["disagree"], 3);
  EXPECT_TRUE(v[1].ok);
  EXPECT_TRUE(v[2].ok);
  EXPECT_EQ(v[2].info["wide_independent_maps"], 75);
}

TEST(Forest, DecompositionRecomposes) {
  std::size_t n = 0;
  for (auto& f : enumerate_forests(4))
    for (auto& tt : enumerate_trees_by_edges(4))
      for_each_independent_map(f, make_ref(tt), [&](const ForestMorphism& m) {
        if (!is_wide(m)) return;
        ++n;
        EXPECT_EQ(decompose_wide_independent(m).recompose(), m) << m.str();
      });
  EXPECT_GT(n, 0u);
}
