#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/dendroidal.hpp"
#include "dendro/forest.hpp"
#include "dendro/morphism.hpp"
#include "dendro/operad.hpp"

namespace dendro {

// Ω/X restricted to object trees with at most max_vertices vertices and arity
// at most max_arity. Objects live on canonical representatives; an operation
// ((S_1,α_1),...,(S_n,α_n)) -> (R,β) is a tuple of maps f_i: S_i -> R whose
// root images are the leaves of a subtree at r_R, with X(f_i)(β) = α_i.
template <DendroidalSetLike X>
class ElementsOperad {
 public:
  using Dendrex = typename X::Dendrex;
  struct Object {
    int shape;
    Dendrex alpha;
  };
  struct Op {
    int out = 0;
    std::vector<int> in;
    std::vector<std::vector<int>> maps;  // maps[i]: edges of in[i]'s tree -> edges of out's tree
    auto operator<=>(const Op&) const = default;
    bool operator==(const Op&) const = default;
  };

  ElementsOperad(X x, int max_vertices, int max_arity)
      : x_(std::move(x)), max_vertices_(max_vertices), max_arity_(max_arity), cache_(std::make_shared<Cache>()) {
    for (auto& t : enumerate_trees(max_vertices, max_arity)) {
      shape_index_[tree_code(t)] = static_cast<int>(shapes_.size());
      roots_leafsets_.push_back(leafsets(t)[t.root()]);
      shapes_.push_back(make_ref(std::move(t)));
    }
    for (int s = 0; s < num_shapes(); ++s)
      for (auto& a : x_.dendrices(*shapes_[s])) {
        object_index_.emplace(std::pair{s, a}, static_cast<int>(objects_.size()));
        objects_.push_back({s, a});
      }
  }

  const X& base() const { return x_; }
  int max_vertices() const { return max_vertices_; }
  int max_arity() const { return max_arity_; }
  int num_shapes() const { return static_cast<int>(shapes_.size()); }
  const TreeRef& shape_tree(int s) const { return shapes_.at(s); }
  std::optional<int> find_shape(const Tree& t) const {
    auto it = shape_index_.find(tree_code(t));
    if (it == shape_index_.end() || static_cast<int>(t.max_arity()) > max_arity_) return std::nullopt;
    return it->second;
  }

  int num_colors() const { return static_cast<int>(objects_.size()); }
  const Object& object(int c) const { return objects_.at(c); }
  const TreeRef& tree_of(int c) const { return shapes_[objects_.at(c).shape]; }
  std::optional<int> find_object(int shape, const Dendrex& a) const {
    auto it = object_index_.find({shape, a});
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  // The object isomorphic to (t, a), for a dendrex a of X at an arbitrary tree t.
  int object_of(const TreeRef& t, const Dendrex& a) const {
    auto s = find_shape(*t);
    if (!s) throw Error("tree exceeds the object bound: " + t->str());
    auto phi = canonical_iso(t, shapes_[*s]);
    auto o = find_object(*s, x_.act(inverse(phi), a));
    if (!o) throw Error("dendrex not found among objects");
    return *o;
  }
  // Number of isomorphism classes of objects (orbits of Aut(S) on X_S).
  std::size_t num_iso_classes() const {
    std::size_t n = 0;
    for (int s = 0; s < num_shapes(); ++s) {
      auto auts = automorphisms(shapes_[s]);
      std::set<Dendrex> seen;
      for (auto& a : x_.dendrices(*shapes_[s])) {
        if (seen.count(a)) continue;
        ++n;
        for (auto& g : auts) seen.insert(x_.act(g, a));
      }
    }
    return n;
  }
  std::string color_name(int c) const {
    const auto& o = objects_.at(c);
    return "(" + shapes_[o.shape]->str() + ", " + x_.show(*shapes_[o.shape], o.alpha) + ")";
  }

  const std::vector<int>& inputs(const Op& o) const { return o.in; }
  int output(const Op& o) const { return o.out; }

  std::vector<Op> ops_into(int c, int n) const { return ops_into_bounded(c, n, max_vertices_); }

  // Operations into c of arity n whose input trees have at most max_src_vertices vertices.
  std::vector<Op> ops_into_bounded(int c, int n, int max_src_vertices) const {
    const Object& tgt = objects_.at(c);
    const TreeRef& r = shapes_[tgt.shape];
    std::vector<Op> out;
    // per leaf edge: the available (object, map) pairs
    std::map<int, std::vector<std::pair<int, const std::vector<int>*>>> avail;
    auto avail_at = [&](int l) -> const std::vector<std::pair<int, const std::vector<int>*>>& {
      auto it = avail.find(l);
      if (it != avail.end()) return it->second;
      std::vector<std::pair<int, const std::vector<int>*>> v;
      for (auto& [s, m] : candidates(tgt.shape, l)) {
        if (static_cast<int>(shapes_[s]->num_vertices()) > max_src_vertices) continue;
        TreeMorphism f{shapes_[s], r, m};
        v.push_back({*find_object(s, x_.act(f, tgt.alpha)), &m});
      }
      return avail.emplace(l, std::move(v)).first->second;
    };
    for (const auto& ls : roots_leafsets_[tgt.shape]) {
      if (static_cast<int>(ls.size()) != n) continue;
      auto order = ls;
      do {
        Op o{c, std::vector<int>(n), std::vector<std::vector<int>>(n)};
        std::function<void(int)> rec = [&](int i) {
          if (i == n) {
            out.push_back(o);
            return;
          }
          for (auto& [obj, m] : avail_at(order[i])) {
            o.in[i] = obj;
            o.maps[i] = *m;
            rec(i + 1);
          }
        };
        rec(0);
      } while (std::next_permutation(order.begin(), order.end()));
    }
    return out;
  }

  std::vector<Op> ops(const std::vector<int>& in, int c) const {
    std::vector<Op> out;
    for (auto& o : ops_into(c, static_cast<int>(in.size())))
      if (o.in == in) out.push_back(o);
    return out;
  }

  Op compose(const Op& p, int i, const Op& q) const {
    if (p.in.at(i) != q.out) throw Error("composition of incompatible operations");
    Op r{p.out, {}, {}};
    for (int j = 0; j < static_cast<int>(p.in.size()); ++j) {
      if (j != i) {
        r.in.push_back(p.in[j]);
        r.maps.push_back(p.maps[j]);
        continue;
      }
      for (std::size_t k = 0; k < q.in.size(); ++k) {
        std::vector<int> m(q.maps[k].size());
        for (std::size_t e = 0; e < m.size(); ++e) m[e] = p.maps[i][q.maps[k][e]];
        r.in.push_back(q.in[k]);
        r.maps.push_back(std::move(m));
      }
    }
    return r;
  }
  Op act(const Op& p, const Perm& s) const {
    Op r{p.out, std::vector<int>(s.size()), std::vector<std::vector<int>>(s.size())};
    for (std::size_t j = 0; j < s.size(); ++j) {
      r.in[j] = p.in.at(s[j]);
      r.maps[j] = p.maps.at(s[j]);
    }
    return r;
  }
  Op unit(int c) const { return Op{c, {c}, {identity_perm(static_cast<int>(tree_of(c)->size()))}}; }
  std::string op_name(const Op& o) const {
    std::string s = "[";
    for (std::size_t i = 0; i < o.in.size(); ++i) {
      TreeMorphism f{tree_of(o.in[i]), tree_of(o.out), o.maps[i]};
      s += (i ? ", " : "") + std::to_string(o.in[i]) + f.str();
    }
    return s + " -> " + std::to_string(o.out) + "]";
  }

  ForestMorphism as_forest_morphism(const Op& o) const {
    ForestMorphism f{{}, forest_of(tree_of(o.out)), std::vector<int>(o.in.size(), 0), {}};
    for (std::size_t i = 0; i < o.in.size(); ++i) {
      f.src.trees.push_back(tree_of(o.in[i]));
      f.maps.push_back(TreeMorphism{tree_of(o.in[i]), tree_of(o.out), o.maps[i]});
    }
    return f;
  }
  // Whether o is an operation: valid maps, wide and independent, over X.
  bool is_operation(const Op& o) const {
    auto f = as_forest_morphism(o);
    if (!is_valid(f) || !is_independent(f) || !is_wide_by_operations(f)) return false;
    for (std::size_t i = 0; i < o.in.size(); ++i)
      if (!(x_.act(f.maps[i], objects_[o.out].alpha) == objects_[o.in[i]].alpha)) return false;
    return true;
  }
  bool is_root_preserving_op(const Op& o) const {
    return o.in.size() == 1 && o.maps[0][tree_of(o.in[0])->root()] == tree_of(o.out)->root();
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::vector<std::pair<int, std::vector<int>>>> cand;
  };

  // Maps S -> R (over all shapes S) sending r_S to l.
  const std::vector<std::pair<int, std::vector<int>>>& candidates(int r, int l) const {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->cand.find({r, l});
    if (it != cache_->cand.end()) return it->second;
    std::vector<std::pair<int, std::vector<int>>> v;
    for (int s = 0; s < num_shapes(); ++s)
      for_each_hom(shapes_[s], shapes_[r], [&](const TreeMorphism& f) {
        if (f.map[f.src->root()] == l) v.push_back({s, f.map});
      });
    return cache_->cand.emplace(std::pair{r, l}, std::move(v)).first->second;
  }

  X x_;
  int max_vertices_, max_arity_;
  std::vector<TreeRef> shapes_;
  std::map<std::string, int> shape_index_;
  std::vector<std::vector<std::vector<int>>> roots_leafsets_;
  std::vector<Object> objects_;
  std::map<std::pair<int, Dendrex>, int> object_index_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------- root functor

template <OperadLike P>
using NerveElements = ElementsOperad<Nerve<P>>;

// (S, α) -> α(r_S)
template <OperadLike P>
int root_object(const NerveElements<P>& e, int c) {
  return e.object(c).alpha.colors[e.tree_of(c)->root()];
}

// The operation of P that β assigns to the subtree spanned by the root images.
template <OperadLike P>
typename P::Op root_op(const NerveElements<P>& e, const typename NerveElements<P>::Op& f) {
  const auto& tgt = e.object(f.out);
  const Tree& r = *e.tree_of(f.out);
  std::vector<int> leaves;
  for (std::size_t i = 0; i < f.in.size(); ++i) leaves.push_back(f.maps[i][e.tree_of(f.in[i])->root()]);
  return eval_subtree(e.base().operad(), r, tgt.alpha.colors, tgt.alpha.ops, r.root(), leaves);
}

struct FunctorReport {
  bool ok = true;
  std::size_t ops_checked = 0, compositions_checked = 0;
  std::string failure;
};

// Checks that the root functor preserves signatures, units, Σ-actions and
// partial compositions on operations of arity <= max_arity.
template <OperadLike P>
FunctorReport check_root_functor(const NerveElements<P>& e, int max_arity, std::size_t max_compositions = 200000) {
  FunctorReport rep;
  const P& p = e.base().operad();
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.failure = m;
    return rep;
  };
  std::vector<typename NerveElements<P>::Op> all;
  for (int c = 0; c < e.num_colors(); ++c) {
    if (!(root_op(e, e.unit(c)) == p.unit(root_object(e, c)))) return fail("unit not preserved at " + e.color_name(c));
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : e.ops_into(c, n)) {
        auto q = root_op(e, o);
        std::vector<int> in;
        for (int x : o.in) in.push_back(root_object(e, x));
        if (p.inputs(q) != in || p.output(q) != root_object(e, o.out)) return fail("signature at " + e.op_name(o));
        for (auto& s : all_perms(n))
          if (!(root_op(e, e.act(o, s)) == p.act(q, s))) return fail("Σ-action at " + e.op_name(o));
        ++rep.ops_checked;
        all.push_back(std::move(o));
      }
  }
  std::map<int, std::vector<const typename NerveElements<P>::Op*>> by_out;
  for (auto& o : all) by_out[o.out].push_back(&o);
  for (auto& a : all)
    for (std::size_t i = 0; i < a.in.size(); ++i)
      for (auto* b : by_out[a.in[i]]) {
        if (rep.compositions_checked >= max_compositions) return rep;
        auto ab = e.compose(a, static_cast<int>(i), *b);
        if (!(root_op(e, ab) == p.compose(root_op(e, a), static_cast<int>(i), root_op(e, *b))))
          return fail("composition at " + e.op_name(a) + " o_" + std::to_string(i) + " " + e.op_name(*b));
        ++rep.compositions_checked;
      }
  return rep;
}

// ---------------------------------------------------------------- section and homotopy over Ω[T]

using TreeElements = NerveElements<TreeOperad>;

inline TreeElements elements_of_tree(const TreeRef& t, int max_vertices, int max_arity) {
  return TreeElements(representable(t), max_vertices, max_arity);
}

// T↑e: the largest subtree of t with root e, keeping t's edge names.
inline Subtree subtree_above(const Tree& t, int e) {
  std::vector<int> ls;
  for (int x : t.above(e))
    if (t.is_leaf(x)) ls.push_back(x);
  return subtree(t, e, ls);
}

// l_T(e) = (T↑e, its inclusion), transported to the representative.
inline int section_object(const TreeElements& e, int edge) {
  const TreeRef& t = e.base().operad().tree_ref();
  auto up = make_ref(subtree_above(*t, edge).tree);
  return e.object_of(up, dendrex_of(morphism_by_names(up, t, {})));
}

// l_T on the operation (e_1, ..., e_n; e): the inclusions T↑e_i -> T↑e.
inline TreeElements::Op section_op(const TreeElements& e, const TreeOperad::Op& o) {
  const TreeRef& t = e.base().operad().tree_ref();
  TreeElements::Op r{section_object(e, o.out), {}, {}};
  auto up = make_ref(subtree_above(*t, o.out).tree);
  auto phi = canonical_iso(up, e.tree_of(r.out));
  for (int x : o.in) {
    auto ux = make_ref(subtree_above(*t, x).tree);
    int c = section_object(e, x);
    auto psi = canonical_iso(ux, e.tree_of(c));
    auto incl = morphism_by_names(ux, up, {});
    r.in.push_back(c);
    r.maps.push_back(compose(compose(phi, incl), inverse(psi)).map);
  }
  return r;
}

// All root-preserving h: (S,α) -> l_T(α(r_S)); exactly one is expected.
inline std::vector<TreeElements::Op> homotopy_candidates(const TreeElements& e, int c) {
  const auto& obj = e.object(c);
  int target = section_object(e, root_object(e, c));
  const TreeRef& s = e.tree_of(c);
  const TreeRef& r = e.tree_of(target);
  const auto& beta = e.object(target).alpha;
  std::vector<TreeElements::Op> out;
  for_each_hom(s, r, [&](const TreeMorphism& h) {
    if (!is_root_preserving(h)) return;
    for (std::size_t x = 0; x < h.map.size(); ++x)
      if (beta.colors[h.map[x]] != obj.alpha.colors[x]) return;
    out.push_back(TreeElements::Op{target, {c}, {h.map}});
  });
  return out;
}

inline std::optional<TreeElements::Op> homotopy_h(const TreeElements& e, int c) {
  auto v = homotopy_candidates(e, c);
  if (v.size() != 1) return std::nullopt;
  return v[0];
}

struct RootSuiteReport {
  bool ok = true;
  std::size_t objects = 0, operations = 0, interchange_checks = 0;
  std::string failure;
};

// r_T ∘ l_T = id, existence/uniqueness of h, h in R_T, and the interchange
// relation for h between id and l_T ∘ r_T on operations whose objects have at
// most sweep_vertices vertices.
inline RootSuiteReport root_suite(const TreeElements& e, int sweep_vertices, int max_arity) {
  RootSuiteReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.failure = m;
    return rep;
  };
  const TreeOperad& p = e.base().operad();
  const Tree& t = p.tree();
  for (int x = 0; x < static_cast<int>(t.size()); ++x)
    if (root_object(e, section_object(e, x)) != x) return fail("r(l(" + t.name(x) + ")) != " + t.name(x));
  for (int c = 0; c < p.num_colors(); ++c)
    for (int n = 0; n <= static_cast<int>(t.size()); ++n)
      for (auto& o : p.ops_into(c, n))
        if (!(root_op(e, section_op(e, o)) == o)) return fail("r(l(f)) != f at " + p.op_name(o));
  std::vector<int> colors;
  std::map<int, TreeElements::Op> h;
  for (int c = 0; c < e.num_colors(); ++c) {
    auto v = homotopy_candidates(e, c);
    if (v.size() != 1)
      return fail("h at " + e.color_name(c) + " has " + std::to_string(v.size()) + " root-preserving candidates");
    if (!e.is_root_preserving_op(v[0]) || !e.is_operation(v[0])) return fail("h at " + e.color_name(c) + " not in R_T");
    h.emplace(c, v[0]);
    ++rep.objects;
    if (static_cast<int>(e.tree_of(c)->num_vertices()) <= sweep_vertices) colors.push_back(c);
  }
  std::vector<TreeElements::Op> ops;
  for (int c : colors)
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : e.ops_into_bounded(c, n, sweep_vertices)) ops.push_back(std::move(o));
  rep.operations = ops.size();
  OperadFunctor<TreeElements, TreeElements> id{[](int c) { return c; }, [](const TreeElements::Op& o) { return o; }};
  OperadFunctor<TreeElements, TreeElements> lr{
      [&](int c) { return section_object(e, root_object(e, c)); },
      [&](const TreeElements::Op& o) { return section_op(e, root_op(e, o)); }};
  auto hr = check_homotopy<TreeElements, TreeElements>(
      e, e, colors, ops, id, lr, [&](int c) -> std::optional<TreeElements::Op> {
        auto it = h.find(c);
        if (it == h.end()) return std::nullopt;
        return it->second;
      });
  rep.interchange_checks = hr.checked;
  if (!hr.ok) return fail(hr.failure);
  return rep;
}

// ---------------------------------------------------------------- naturality

// r_X ∘ (Ω/α) = α ∘ r_T for a dendrex α of X = N_d(P) at t, checked on the
// objects of Ω/T and its operations of arity <= max_arity.
template <OperadLike P>
FunctorReport check_naturality(const TreeElements& et, const NerveElements<P>& ex,
                               const typename Nerve<P>::Dendrex& alpha, int max_arity) {
  FunctorReport rep;
  const Tree& t = et.base().operad().tree();
  const P& p = ex.base().operad();
  auto push_obj = [&](int c) {
    // (S, u) -> (S, X(u)(α))
    TreeMorphism u{et.tree_of(c), et.base().operad().tree_ref(), et.object(c).alpha.colors};
    return *ex.find_object(et.object(c).shape, ex.base().act(u, alpha));
  };
  for (int c = 0; c < et.num_colors(); ++c) {
    int lhs = root_object(ex, push_obj(c));
    int rhs = alpha.colors[root_object(et, c)];
    if (lhs != rhs) {
      rep.ok = false;
      rep.failure = "objects differ at " + et.color_name(c);
      return rep;
    }
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : et.ops_into(c, n)) {
        typename NerveElements<P>::Op po{push_obj(o.out), {}, o.maps};
        for (int x : o.in) po.in.push_back(push_obj(x));
        auto ro = root_op(et, o);
        auto l = root_op(ex, po);
        auto r = eval_subtree(p, t, alpha.colors, alpha.ops, ro.out, ro.in);
        ++rep.ops_checked;
        if (!(l == r)) {
          rep.ok = false;
          rep.failure = "operations differ at " + et.op_name(o);
          return rep;
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------- strict Segal

struct SegalReport {
  bool ok = true;
  std::size_t whole = 0, pairs = 0, images = 0;
};

// For the grafting t = lower ∪_a upper at the inner edge a: whether
// Y_t -> Y_lower ×_{Y_η} Y_upper is a bijection.
template <DendroidalSetLike Y>
SegalReport segal_check(const Y& y, const TreeRef& t, int a) {
  if (!t->is_inner(a)) throw Error("edge '" + t->name(a) + "' does not split the tree");
  auto up = make_ref(subtree_above(*t, a).tree);
  std::vector<int> low_leaves{a};
  for (int l : t->leaves())
    if (!t->leq(l, a)) low_leaves.push_back(l);
  auto low = make_ref(subtree(*t, t->root(), low_leaves).tree);
  auto i_up = morphism_by_names(up, t, {});
  auto i_low = morphism_by_names(low, t, {});
  auto eta = make_ref(Tree::eta(t->name(a)));
  auto j_up = morphism_by_names(eta, up, {});
  auto j_low = morphism_by_names(eta, low, {});
  using D = typename Y::Dendrex;
  SegalReport rep;
  std::set<std::pair<D, D>> img;
  auto whole = y.dendrices(*t);
  rep.whole = whole.size();
  for (auto& x : whole) img.insert({y.act(i_low, x), y.act(i_up, x)});
  rep.images = img.size();
  std::map<D, std::size_t> at_a;
  for (auto& z : y.dendrices(*up)) ++at_a[y.act(j_up, z)];
  for (auto& w : y.dendrices(*low)) {
    auto it = at_a.find(y.act(j_low, w));
    if (it != at_a.end()) rep.pairs += it->second;
  }
  rep.ok = rep.whole == rep.images && rep.images == rep.pairs;
  return rep;
}

}  // namespace dendro
