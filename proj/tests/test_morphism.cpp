#include <gtest/gtest.h>

#include "dendro/morphism.hpp"

using namespace dendro;

namespace {

std::size_t brute_hom(const TreeRef& s, const TreeRef& t) {
  int n = static_cast<int>(s->size()), m = static_cast<int>(t->size());
  std::size_t c = 0;
  std::vector<int> v(n, 0);
  while (true) {
    if (is_valid(TreeMorphism{s, t, v})) ++c;
    int i = 0;
    while (i < n && ++v[i] == m) v[i++] = 0;
    if (i == n) break;
  }
  return c;
}

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Morphism, HomMatchesBruteForce) {
  auto ts = enumerate_trees(2, 2);
  for (auto& a : ts)
    for (auto& b : ts) {
      auto s = make_ref(a), t = make_ref(b);
      EXPECT_EQ(hom(s, t).size(), brute_hom(s, t)) << a.str() << " -> " << b.str();
    }
}

// Between linear trees, maps are monotone maps [m] -> [n].
TEST(Morphism, LinearHomIsSimplicial) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      EXPECT_EQ(hom(Tree::linear(m), Tree::linear(n)).size(), binom(n + m + 1, m + 1)) << m << "," << n;
}

TEST(Morphism, CorollaAutomorphisms) {
  std::size_t f = 1;
  for (int n = 0; n <= 4; ++n) {
    if (n > 1) f *= n;
    EXPECT_EQ(automorphisms(make_ref(Tree::corolla(n))).size(), f);
  }
}

TEST(Morphism, ComposeAndInverse) {
  auto t = make_ref(parse_tree("r[a,b[c,d]]"));
  for (auto& g : automorphisms(t)) {
    EXPECT_TRUE(is_iso(g));
    EXPECT_EQ(compose(g, inverse(g)), identity_morphism(t));
  }
}

TEST(Morphism, ElementaryFacesAndDegeneracies) {
  auto t = make_ref(parse_tree("r[a,b[c,d]]"));
  auto fs = elementary_faces(t);
  int inner = 0;
  for (auto& f : fs) {
    EXPECT_TRUE(is_valid(f.map));
    EXPECT_TRUE(is_injective(f.map));
    inner += f.inner;
  }
  EXPECT_EQ(inner, 1);
  EXPECT_EQ(fs.size(), 3u);  // inner face at b, the top vertex, the root vertex
  auto l = make_ref(Tree::linear(2));
  for (int e = 0; e < static_cast<int>(l->size()); ++e)
    if (l->has_vertex(e) && l->kids(e).size() == 1) {
      auto d = degeneracy(l, e);
      EXPECT_TRUE(is_valid(d));
      EXPECT_FALSE(is_injective(d));
    }
}

TEST(Morphism, FactorizationRecomposes) {
  auto ts = enumerate_trees(3, 2);
  std::size_t n = 0;
  for (auto& a : ts)
    for (auto& b : ts)
      for (auto& f : hom(make_ref(a), make_ref(b))) {
        ++n;
        EXPECT_EQ(factorize(f).recompose(), f) << f.str();
      }
  EXPECT_EQ(n, 1998u);
}
