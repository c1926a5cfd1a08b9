#include <gtest/gtest.h>

#include "dendro/io.hpp"
#include "suites.hpp"

using namespace dendro;

TEST(Io, TreeRoundTrip) {
  for (auto& t : enumerate_trees(3, 2)) {
    auto j = tree_json(t);
    EXPECT_EQ(tree_from_json(j).str(), t.str());
  }
  auto j = tree_json(Tree::eta("e"));
  EXPECT_EQ(j["root"], "e");
  EXPECT_TRUE(j["vertices"].empty());
}

TEST(Io, OperadRoundTrip) {
  for (auto p : {suites::c2_operad(), from_category(FiniteCategory::chain(2)), from_category(walking_iso())}) {
    auto j = operad_json(p);
    auto q = operad_from_json(j);
    q.validate();
    EXPECT_EQ(operad_json(q), j);
  }
}

TEST(Io, SchemaIsChecked) {
  auto j = operad_json(suites::c2_operad());
  j["schema"] = "other/9";
  EXPECT_THROW(operad_from_json(j), Error);
}

TEST(Io, PresheafRoundTrip) {
  auto x = truncate(Nerve<FiniteOperad>(suites::c2_operad()), 2, 2);
  auto j = presheaf_json(x);
  EXPECT_EQ(presheaf_json(presheaf_from_json(j)), j);
}

TEST(Io, ForestMorphismRoundTrip) {
  auto f = forest_root_face(parse_forest("r[a] + e")).incl;
  EXPECT_EQ(forest_morphism_from_json(forest_morphism_json(f)), f);
}

TEST(Io, AlgebraRoundTrip) {
  auto p = from_category(FiniteCategory::chain(1));
  for (auto& a : enumerate_algebras(p, 2)) EXPECT_EQ(algebra_from_json(p, algebra_json(p, a)), a);
}

TEST(Io, DecalageRoundTrip) {
  auto d = dendroidal_decalage(2, 2, true).data;
  auto j = decalage_json(d);
  auto e = decalage_from_json(j);
  EXPECT_EQ(decalage_json(e), j);
  EXPECT_TRUE(validate_decalage(e).ok());
}

TEST(Io, Dot) {
  auto s = tree_dot(parse_tree("r[a,b]"));
  std::size_t labels = 0;
  for (std::size_t p = s.find("label="); p != std::string::npos; p = s.find("label=", p + 1)) ++labels;
  EXPECT_EQ(labels, 4u);
  EXPECT_EQ(dot_quote("a\"b"), "\"a\\\"b\"");
}
