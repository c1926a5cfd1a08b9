#include <gtest/gtest.h>

#include "dendro/elements.hpp"
#include "suites.hpp"

using namespace dendro;

// Objects of Ω/Ω[T] over shapes S are the maps S -> T.
TEST(Elements, ObjectsAreMaps) {
  for (const char* s : {"r[a]", "r[a,b]", "r[a[]]"}) {
    auto t = make_ref(parse_tree(s));
    auto e = elements_of_tree(t, 2, 2);
    std::size_t n = 0;
    for (auto& x : enumerate_trees(2, 2)) n += hom(make_ref(x), t).size();
    EXPECT_EQ(static_cast<std::size_t>(e.num_colors()), n) << s;
  }
}

TEST(Elements, CountsFrozen) {
  auto e = elements_of_tree(make_ref(Tree::corolla(2)), 2, 2);
  EXPECT_EQ(e.num_colors(), 15);
  EXPECT_EQ(e.num_iso_classes(), 13u);
}

TEST(Elements, OperadAxioms) {
  auto e = elements_of_tree(make_ref(Tree::corolla(2)), 2, 2);
  EXPECT_FALSE(check_operad_axioms(e, 2));
  EXPECT_TRUE(is_sigma_free(e, 3));
  for (auto& o : all_ops(e, 2)) EXPECT_TRUE(e.is_operation(o)) << e.op_name(o);
}

TEST(Elements, SigmaFreeOverNerve) {
  NerveElements<FiniteOperad> e(Nerve<FiniteOperad>(suites::c2_operad()), 2, 2);
  EXPECT_TRUE(is_sigma_free(e, 3));
}

TEST(Root, FunctorIsOperadMap) {
  NerveElements<FiniteOperad> e(Nerve<FiniteOperad>(suites::c2_operad()), 2, 2);
  auto r = check_root_functor(e, 2);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_GT(r.compositions_checked, 0u);
}

TEST(Root, SectionAndHomotopy) {
  for (auto& tt : enumerate_trees(3, 2)) {
    auto t = make_ref(tt);
    auto e = elements_of_tree(t, std::max(1, tt.num_vertices()), 2);
    auto r = root_suite(e, 2, 2);
    EXPECT_TRUE(r.ok) << tt.str() << ": " << r.failure;
  }
}

TEST(Root, HomotopyIsUnique) {
  auto t = make_ref(parse_tree("r[a,b[c,d]]"));
  auto e = elements_of_tree(t, 2, 2);
  for (int c = 0; c < e.num_colors(); ++c) {
    auto h = homotopy_h(e, c);
    ASSERT_TRUE(h);
    EXPECT_TRUE(e.is_root_preserving_op(*h));
  }
}

TEST(Root, Naturality) {
  Nerve<FiniteOperad> x(suites::c2_operad());
  NerveElements<FiniteOperad> ex(x, 2, 2);
  auto t = make_ref(Tree::corolla(2));
  auto et = elements_of_tree(t, 2, 2);
  for (auto& a : x.dendrices(*t)) {
    auto r = check_naturality(et, ex, a, 2);
    EXPECT_TRUE(r.ok) << r.failure;
  }
}

TEST(Root, LastVertex) {
  auto c = suites::last_vertex_agreement(2);
  EXPECT_TRUE(c.ok) << c.witness;
}

TEST(Segal, ElementsNerve) {
  auto e = elements_of_tree(make_ref(Tree::corolla(2)), 2, 2);
  Nerve<TreeElements> n(e);
  auto t = make_ref(Tree::linear(2));
  auto r = segal_check(n, t, t->inner_edges().at(0));
  EXPECT_TRUE(r.ok);
}
