#include <gtest/gtest.h>

#include "dendro/decalage.hpp"
#include "suites.hpp"

using namespace dendro;

namespace {

// One object, D = id, ι = γ = id. With a one-color Ω the roots collide and the
// last axiom fails; with the empty operad everything holds.
DecalageData terminal(bool empty) {
  FiniteCategory c{{"*"}, {{"id", 0, 0}}, {0}, {{{0, 0}, 0}}};
  auto d = decalage_from_category(c);
  FiniteOperad o;
  if (!empty) {
    o.add_color("x");
    o.add_missing_units();
  }
  d.omega = {o};
  d.omega_map = {identity_operad_morphism(o)};
  d.root = {empty ? -1 : 0};
  d.w = 0;
  d.D_obj = {0};
  d.D_arr = {0};
  d.iota = {0};
  d.gamma = {0};
  return d;
}

}  // namespace

TEST(Decalage, TerminalFailsOnlyDisjointness) {
  auto r = validate_decalage(terminal(false));
  for (auto& c : r.checks) EXPECT_EQ(c.ok, c.name != "axiom 3") << c.name;
}

TEST(Decalage, EmptyOmegaPasses) { EXPECT_TRUE(validate_decalage(terminal(true)).ok()); }

TEST(Decalage, WideInstancePasses) {
  auto dd = dendroidal_decalage(2, 2, true);
  EXPECT_EQ(dd.data.objects.size(), 16u);
  auto r = validate_decalage(dd.data);
  for (auto& c : r.checks) EXPECT_TRUE(c.ok) << c.name << ": " << c.witness;
}

TEST(Decalage, BrokenGammaIsCaught) {
  auto d = dendroidal_decalage(2, 2, true).data;
  d.gamma[0] = d.iota[0];  // object 0 is η
  auto r = validate_decalage(d);
  EXPECT_FALSE(r.at("axiom 3").ok);
  EXPECT_FALSE(r.at("gamma natural").ok);
  EXPECT_TRUE(r.at("axiom 1").ok);
}

// On all maps, -⋆η is undefined on maps that do not span the root, and only
// the functor check notices.
TEST(Decalage, FullInstanceFailsOnlyFunctoriality) {
  auto dd = dendroidal_decalage(3, 2);
  EXPECT_EQ(dd.data.objects.size(), 46u);
  EXPECT_EQ(dd.data.arrows.size(), 9061u);
  auto r = validate_decalage(dd.data);
  for (auto& c : r.checks) EXPECT_EQ(c.ok, c.name != "D functor") << c.name << ": " << c.witness;
}

TEST(Decalage, WideArrowCountFrozen) {
  auto dd = dendroidal_decalage(3, 2, true);
  EXPECT_EQ(dd.data.arrows.size(), 8497u);
  EXPECT_EQ(dd.data.num_domain_objects, 28);
}

TEST(Decalage, AgreesWithOperadOfElements) {
  auto dd = dendroidal_decalage(2, 2);
  auto cmp = compare_with_elements(dd, suites::c2_operad(), 2);
  EXPECT_TRUE(cmp.ok) << cmp.failure;
  EXPECT_GT(cmp.operations, 0u);
}

TEST(Decalage, FinalObjectFunctorAndNaturality) {
  auto c = suites::decalage_elements(2, 2);
  EXPECT_TRUE(c.ok) << c.witness;
  EXPECT_EQ(c.info["naturality_morphisms"], 1);
}

// Over a category the generic construction only has unary operations.
TEST(Decalage, CategoryCaseIsUnary) {
  auto dd = dendroidal_decalage(2, 1);
  auto d = std::make_shared<const DecalageData>(dd.data);
  auto p = from_category(FiniteCategory::chain(1));
  auto x = omega_nerve(*d, p);
  GenericElements ge(d, x.presheaf);
  EXPECT_GT(ge.num_colors(), 0);
  for (int c = 0; c < ge.num_colors(); ++c) {
    EXPECT_FALSE(ge.ops_into(c, 1).empty());
    EXPECT_TRUE(ge.ops_into(c, 2).empty());
  }
}
