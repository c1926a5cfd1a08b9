#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dendro/morphism.hpp"
#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

// A presheaf on Ω: dendrices at every tree and a contravariant action X(f).
template <class X>
concept DendroidalSetLike = requires(const X& x, const Tree& t, const TreeMorphism& f, const typename X::Dendrex& d) {
  typename X::Dendrex;
  { x.dendrices(t) } -> std::same_as<std::vector<typename X::Dendrex>>;
  { x.act(f, d) } -> std::same_as<typename X::Dendrex>;
  { x.show(t, d) } -> std::convertible_to<std::string>;
};

// ---------------------------------------------------------------- nerves

// The operation of p obtained by composing the vertex operations of a dendrex
// over the subtree of t with the given root and ordered leaves.
template <OperadLike P>
typename P::Op eval_subtree(const P& p, const Tree& t, const std::vector<int>& colors,
                            const std::vector<typename P::Op>& ops, int root, const std::vector<int>& leaves) {
  using Op = typename P::Op;
  std::vector<char> stop(t.size(), 0);
  for (int l : leaves) stop[l] = 1;
  if (stop[root]) {
    if (leaves.size() != 1) throw Error("leaves do not span a subtree");
    return p.unit(colors[root]);
  }
  std::function<std::pair<Op, std::vector<int>>(int)> build = [&](int e) {
    if (!t.has_vertex(e)) throw Error("leaves do not span a subtree");
    Op r = ops[e];
    const auto& ks = t.kids(e);
    std::vector<std::optional<Op>> sub(ks.size());
    std::vector<int> order;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (stop[ks[j]]) {
        order.push_back(ks[j]);
        continue;
      }
      auto [o, so] = build(ks[j]);
      sub[j] = std::move(o);
      order.insert(order.end(), so.begin(), so.end());
    }
    for (int j = static_cast<int>(ks.size()) - 1; j >= 0; --j)
      if (sub[j]) r = p.compose(r, j, *sub[j]);
    return std::pair{r, order};
  };
  auto [r, order] = build(root);
  if (order.size() != leaves.size()) throw Error("leaves do not span a subtree");
  return p.act(r, perm_matching(order, leaves));
}

// N_d(P): X_T = operad maps Ω(T) -> P, stored as a color per edge and an
// operation per edge (the vertex operation, or the unit at leaves).
template <OperadLike P>
class Nerve {
 public:
  using Op = typename P::Op;
  struct Dendrex {
    std::vector<int> colors;
    std::vector<Op> ops;
    auto operator<=>(const Dendrex&) const = default;
    bool operator==(const Dendrex&) const = default;
  };

  explicit Nerve(std::shared_ptr<const P> p) : p_(std::move(p)), cache_(std::make_shared<Cache>()) {}
  explicit Nerve(P p) : Nerve(std::make_shared<const P>(std::move(p))) {}

  const P& operad() const { return *p_; }
  std::shared_ptr<const P> operad_ptr() const { return p_; }

  std::vector<Dendrex> dendrices(const Tree& t) const {
    std::string key = t.str();
    {
      std::lock_guard<std::mutex> lk(cache_->mu);
      auto it = cache_->memo.find(key);
      if (it != cache_->memo.end()) return it->second;
    }
    auto v = compute(t);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->memo.emplace(key, v);
    return v;
  }

  Dendrex act(const TreeMorphism& f, const Dendrex& d) const {
    const Tree& s = *f.src;
    const Tree& t = *f.tgt;
    if (d.colors.size() != t.size()) throw Error("dendrex does not live on the target tree");
    Dendrex r{std::vector<int>(s.size()), std::vector<Op>(s.size())};
    for (int e = 0; e < static_cast<int>(s.size()); ++e) r.colors[e] = d.colors[f.map[e]];
    for (int e = 0; e < static_cast<int>(s.size()); ++e) {
      if (!s.has_vertex(e)) {
        r.ops[e] = p_->unit(r.colors[e]);
        continue;
      }
      std::vector<int> img;
      for (int k : s.kids(e)) img.push_back(f.map[k]);
      r.ops[e] = eval_subtree(*p_, t, d.colors, d.ops, f.map[e], img);
    }
    return r;
  }

  std::string show(const Tree& t, const Dendrex& d) const {
    std::string s = "{";
    bool first = true;
    for (int e = 0; e < static_cast<int>(t.size()); ++e) {
      s += (first ? "" : ", ") + t.name(e) + ":" + p_->color_name(d.colors[e]);
      first = false;
    }
    for (int e : t.vertex_edges()) s += ", @" + t.name(e) + "=" + p_->op_name(d.ops[e]);
    return s + "}";
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::vector<Dendrex>> memo;
  };

  std::vector<Dendrex> compute(const Tree& t) const {
    std::vector<Dendrex> out;
    Dendrex d{std::vector<int>(t.size(), -1), std::vector<Op>(t.size())};
    std::vector<int> verts = t.vertex_edges();
    std::function<void(std::size_t)> rec = [&](std::size_t vi) {
      if (vi == verts.size()) {
        Dendrex x = d;
        for (int e = 0; e < static_cast<int>(t.size()); ++e)
          if (!t.has_vertex(e)) x.ops[e] = p_->unit(x.colors[e]);
        out.push_back(std::move(x));
        return;
      }
      int e = verts[vi];
      const auto& ks = t.kids(e);
      for (const auto& o : p_->ops_into(d.colors[e], static_cast<int>(ks.size()))) {
        std::vector<int> in = p_->inputs(o);
        d.ops[e] = o;
        for (std::size_t j = 0; j < ks.size(); ++j) d.colors[ks[j]] = in[j];
        rec(vi + 1);
      }
    };
    for (int c = 0; c < p_->num_colors(); ++c) {
      d.colors[t.root()] = c;
      rec(0);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::shared_ptr<const P> p_;
  std::shared_ptr<Cache> cache_;
};

// Ω[T] as the nerve of Ω(T); a dendrex at S is the morphism S -> T given by its colors.
inline Nerve<TreeOperad> representable(const TreeRef& t) { return Nerve<TreeOperad>(TreeOperad(t)); }
inline Nerve<TreeOperad> representable(const Tree& t) { return representable(make_ref(t)); }

// The dendrex of Ω[T] corresponding to a morphism into T.
inline Nerve<TreeOperad>::Dendrex dendrex_of(const TreeMorphism& f) {
  const Tree& s = *f.src;
  Nerve<TreeOperad>::Dendrex d{f.map, std::vector<TreeOperad::Op>(s.size())};
  for (int e = 0; e < static_cast<int>(s.size()); ++e) {
    d.ops[e].out = f.map[e];
    if (!s.has_vertex(e)) d.ops[e].in = {f.map[e]};
    for (int k : s.kids(e)) d.ops[e].in.push_back(f.map[k]);
  }
  return d;
}

inline TreeMorphism as_morphism(const TreeRef& s, const Nerve<TreeOperad>& rep,
                                const Nerve<TreeOperad>::Dendrex& d) {
  return TreeMorphism{s, rep.operad().tree_ref(), d.colors};
}

// ---------------------------------------------------------------- truncated presheaves

// Explicit presheaf on trees with at most max_vertices vertices and vertex arity
// at most max_arity. Elements are stored at canonical representatives; X(f) for
// arbitrary trees is transported along the canonical isomorphisms.
class TruncatedPresheaf {
 public:
  using Dendrex = int;

  TruncatedPresheaf() = default;
  TruncatedPresheaf(int max_vertices, int max_arity) : max_vertices_(max_vertices), max_arity_(max_arity) {
    for (auto& t : enumerate_trees(max_vertices, max_arity)) {
      shape_index_[tree_code(t)] = static_cast<int>(shapes_.size());
      shapes_.push_back(make_ref(std::move(t)));
    }
    labels_.resize(shapes_.size());
  }

  int max_vertices() const { return max_vertices_; }
  int max_arity() const { return max_arity_; }
  const std::vector<TreeRef>& shapes() const { return shapes_; }
  int num_shapes() const { return static_cast<int>(shapes_.size()); }
  const std::vector<std::string>& labels(int shape) const { return labels_.at(shape); }
  int count(int shape) const { return static_cast<int>(labels_.at(shape).size()); }
  bool in_bound(const Tree& t) const {
    return static_cast<int>(t.num_vertices()) <= max_vertices_ && static_cast<int>(t.max_arity()) <= max_arity_;
  }

  int shape_of(const Tree& t) const {
    auto it = shape_index_.find(tree_code(t));
    if (it == shape_index_.end() || !in_bound(t)) throw Error("tree exceeds truncation bound: " + t.str());
    return it->second;
  }
  // The canonical isomorphism t -> its representative.
  TreeMorphism to_shape(const TreeRef& t) const { return canonical_iso(t, shapes_[shape_of(*t)]); }

  void set_labels(int shape, std::vector<std::string> labels) { labels_.at(shape) = std::move(labels); }
  // values[x] = X(g)(x) for x in X at g's target shape.
  void set_action(int src, int tgt, const std::vector<int>& map, std::vector<int> values) {
    action_[{src, tgt, map}] = std::move(values);
  }
  const std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>>& actions() const { return action_; }

  std::vector<int> dendrices(const Tree& t) const {
    int s = shape_of(t);
    std::vector<int> v(labels_[s].size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = i;
    return v;
  }
  int act_on_shapes(int src, int tgt, const std::vector<int>& map, int x) const {
    auto it = action_.find({src, tgt, map});
    if (it == action_.end()) throw Error("no action recorded for a morphism between representatives");
    return it->second.at(x);
  }
  int act(const TreeMorphism& f, int x) const {
    auto ps = to_shape(f.src);
    auto pt = to_shape(f.tgt);
    std::vector<int> g(f.src->size());
    auto inv = perm_inverse(ps.map);
    for (std::size_t e = 0; e < g.size(); ++e) g[e] = pt.map[f.map[inv[e]]];
    return act_on_shapes(shape_of(*f.src), shape_of(*f.tgt), g, x);
  }
  std::string show(const Tree& t, int x) const { return labels_.at(shape_of(t)).at(x); }

  // Functoriality: identities act trivially and X(g∘f) = X(f)∘X(g) on every
  // composable pair of morphisms between representatives.
  std::optional<std::string> validate() const {
    std::map<int, std::vector<std::pair<int, const std::vector<int>*>>> out_of;  // src shape -> (tgt, map)
    for (auto& [k, v] : action_) {
      auto& [s, t, m] = k;
      if (static_cast<int>(v.size()) != count(t)) return "action table has the wrong length";
      for (int y : v)
        if (y < 0 || y >= count(s)) return "action value out of range";
      if (s == t && is_identity(m))
        for (int x = 0; x < count(t); ++x)
          if (v[x] != x) return "identity does not act trivially on " + shapes_[t]->str();
      out_of[s].push_back({t, &m});
    }
    for (int s = 0; s < num_shapes(); ++s)
      for (int t = 0; t < num_shapes(); ++t) {
        std::size_t n = 0;
        for_each_hom(shapes_[s], shapes_[t], [&](const TreeMorphism&) { ++n; });
        std::size_t have = 0;
        for (auto& [tt, m] : out_of[s]) have += tt == t ? 1 : 0;
        if (n != have) return "missing action for morphisms " + shapes_[s]->str() + " -> " + shapes_[t]->str();
      }
    for (auto& [k, vf] : action_) {
      auto& [a, b, f] = k;
      for (auto& [c, g] : out_of[b]) {
        std::vector<int> gf(f.size());
        for (std::size_t e = 0; e < f.size(); ++e) gf[e] = (*g)[f[e]];
        const auto& vg = action_.at({b, c, *g});
        const auto& vgf = action_.at({a, c, gf});
        for (int x = 0; x < count(c); ++x)
          if (vgf[x] != vf[vg[x]]) return "composition not respected at " + shapes_[a]->str() + " -> " +
                                         shapes_[b]->str() + " -> " + shapes_[c]->str();
      }
    }
    return std::nullopt;
  }

 private:
  int max_vertices_ = 0, max_arity_ = 0;
  std::vector<TreeRef> shapes_;
  std::map<std::string, int> shape_index_;
  std::vector<std::vector<std::string>> labels_;
  std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>> action_;
};

// Restricts any dendroidal set to trees within the bound.
template <DendroidalSetLike X>
TruncatedPresheaf truncate(const X& x, int max_vertices, int max_arity) {
  TruncatedPresheaf out(max_vertices, max_arity);
  using D = typename X::Dendrex;
  std::vector<std::map<D, int>> index(out.num_shapes());
  for (int s = 0; s < out.num_shapes(); ++s) {
    auto ds = x.dendrices(*out.shapes()[s]);
    std::vector<std::string> labels;
    for (auto& d : ds) {
      index[s].emplace(d, static_cast<int>(labels.size()));
      labels.push_back(x.show(*out.shapes()[s], d));
    }
    out.set_labels(s, std::move(labels));
  }
  for (int s = 0; s < out.num_shapes(); ++s)
    for (int t = 0; t < out.num_shapes(); ++t) {
      auto dt = x.dendrices(*out.shapes()[t]);
      for_each_hom(out.shapes()[s], out.shapes()[t], [&](const TreeMorphism& f) {
        std::vector<int> vals;
        vals.reserve(dt.size());
        for (auto& d : dt) vals.push_back(index[s].at(x.act(f, d)));
        out.set_action(s, t, f.map, std::move(vals));
      });
    }
  return out;
}

// The largest subpresheaf contained in `keep` (per shape, per element).
inline TruncatedPresheaf largest_subpresheaf(const TruncatedPresheaf& x, std::vector<std::vector<char>> keep) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [k, v] : x.actions()) {
      auto& [s, t, m] = k;
      for (int a = 0; a < x.count(t); ++a)
        if (keep[t][a] && !keep[s][v[a]]) {
          keep[t][a] = 0;
          changed = true;
        }
    }
  }
  TruncatedPresheaf out(x.max_vertices(), x.max_arity());
  std::vector<std::vector<int>> re(x.num_shapes());
  for (int s = 0; s < x.num_shapes(); ++s) {
    std::vector<std::string> labels;
    re[s].assign(x.count(s), -1);
    for (int a = 0; a < x.count(s); ++a)
      if (keep[s][a]) {
        re[s][a] = static_cast<int>(labels.size());
        labels.push_back(x.labels(s)[a]);
      }
    out.set_labels(s, std::move(labels));
  }
  for (auto& [k, v] : x.actions()) {
    auto& [s, t, m] = k;
    std::vector<int> nv;
    for (int a = 0; a < x.count(t); ++a)
      if (keep[t][a]) nv.push_back(re[s][v[a]]);
    out.set_action(s, t, m, std::move(nv));
  }
  return out;
}

// Disjoint union of presheaves over the same universe; labels get "<i>:" prefixes.
inline TruncatedPresheaf coproduct(const std::vector<TruncatedPresheaf>& xs) {
  if (xs.empty()) throw Error("empty coproduct");
  TruncatedPresheaf out(xs[0].max_vertices(), xs[0].max_arity());
  for (auto& x : xs)
    if (x.max_vertices() != out.max_vertices() || x.max_arity() != out.max_arity())
      throw Error("coproduct of presheaves with different bounds");
  for (int s = 0; s < out.num_shapes(); ++s) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (auto& l : xs[i].labels(s)) labels.push_back(std::to_string(i) + ":" + l);
    out.set_labels(s, std::move(labels));
  }
  for (auto& [k, v0] : xs[0].actions()) {
    auto& [s, t, m] = k;
    std::vector<int> nv;
    int off_s = 0;
    for (auto& x : xs) {
      for (int y : x.actions().at(k)) nv.push_back(y + off_s);
      off_s += x.count(s);
    }
    out.set_action(s, t, m, std::move(nv));
  }
  return out;
}

// A natural map between truncated presheaves, as an element map per shape.
using PresheafMap = std::vector<std::vector<int>>;

inline std::optional<std::string> check_natural(const TruncatedPresheaf& a, const TruncatedPresheaf& b,
                                                const PresheafMap& f) {
  for (auto& [k, va] : a.actions()) {
    auto& [s, t, m] = k;
    const auto& vb = b.actions().at(k);
    for (int x = 0; x < a.count(t); ++x)
      if (f[s][va[x]] != vb[f[t][x]]) return "not natural along " + a.shapes()[s]->str() + " -> " + a.shapes()[t]->str();
  }
  return std::nullopt;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n = 0) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return static_cast<int>(p.size()) - 1;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

// Degreewise pushout of x <- a -> b.
inline TruncatedPresheaf pushout(const TruncatedPresheaf& a, const TruncatedPresheaf& x, const TruncatedPresheaf& b,
                                 const PresheafMap& ax, const PresheafMap& ab) {
  int n = x.num_shapes();
  TruncatedPresheaf out(x.max_vertices(), x.max_arity());
  std::vector<std::vector<int>> cls_x(n), cls_b(n);
  std::vector<std::vector<std::pair<int, int>>> rep(n);  // class -> (side, element)
  for (int s = 0; s < n; ++s) {
    int nx = x.count(s), nb = b.count(s);
    UnionFind uf(nx + nb);
    for (int e = 0; e < a.count(s); ++e) uf.unite(ax[s][e], nx + ab[s][e]);
    std::map<int, int> root_to_cls;
    std::vector<std::string> labels;
    auto cls_of = [&](int i) {
      int r = uf.find(i);
      auto it = root_to_cls.find(r);
      if (it != root_to_cls.end()) return it->second;
      int c = static_cast<int>(labels.size());
      root_to_cls[r] = c;
      labels.push_back(r < nx ? x.labels(s)[r] : "J" + b.labels(s)[r - nx]);
      rep[s].push_back(r < nx ? std::pair{0, r} : std::pair{1, r - nx});
      return c;
    };
    for (int i = 0; i < nx; ++i) cls_x[s].push_back(cls_of(i));
    for (int i = 0; i < nb; ++i) cls_b[s].push_back(cls_of(nx + i));
    out.set_labels(s, std::move(labels));
  }
  for (auto& [k, vx] : x.actions()) {
    auto& [s, t, m] = k;
    const auto& vb = b.actions().at(k);
    std::vector<int> nv(out.count(t), -1);
    for (int i = 0; i < x.count(t); ++i) {
      int c = cls_x[t][i], y = cls_x[s][vx[i]];
      if (nv[c] >= 0 && nv[c] != y) throw Error("pushout action is not well defined");
      nv[c] = y;
    }
    for (int i = 0; i < b.count(t); ++i) {
      int c = cls_b[t][i], y = cls_b[s][vb[i]];
      if (nv[c] >= 0 && nv[c] != y) throw Error("pushout action is not well defined");
      nv[c] = y;
    }
    out.set_action(s, t, m, std::move(nv));
  }
  return out;
}

// ---------------------------------------------------------------- horns

// A face of a tree, identified by its inclusion (edge names inherited from t).
struct FaceInclusion {
  TreeMorphism map;
  std::set<int> edges;
  std::vector<int> leaves;
};

inline FaceInclusion make_face_inclusion(const TreeMorphism& f) {
  FaceInclusion fi{f, std::set<int>(f.map.begin(), f.map.end()), {}};
  for (int l : f.src->leaves()) fi.leaves.push_back(f.map[l]);
  std::sort(fi.leaves.begin(), fi.leaves.end());
  return fi;
}

// All faces of t (iterated elementary faces, t itself included), deduplicated.
inline std::vector<FaceInclusion> all_faces(const TreeRef& t) {
  std::vector<FaceInclusion> out;
  std::set<std::pair<std::set<int>, std::vector<int>>> seen;
  std::vector<TreeMorphism> queue{identity_morphism(t)};
  while (!queue.empty()) {
    TreeMorphism f = queue.back();
    queue.pop_back();
    auto fi = make_face_inclusion(f);
    if (!seen.insert({fi.edges, fi.leaves}).second) continue;
    out.push_back(fi);
    for (auto& g : elementary_faces(f.src)) queue.push_back(compose(f, g.map));
  }
  std::sort(out.begin(), out.end(), [](const FaceInclusion& a, const FaceInclusion& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() > b.edges.size();
    return std::tie(a.edges, a.leaves) < std::tie(b.edges, b.leaves);
  });
  return out;
}

// The factorization of face g through face f, if g is a face of f.
inline std::optional<TreeMorphism> face_through(const FaceInclusion& g, const FaceInclusion& f) {
  for (int e : g.edges)
    if (!f.edges.count(e)) return std::nullopt;
  TreeMorphism h{g.map.src, f.map.src, std::vector<int>(g.map.src->size())};
  const Tree& ft = *f.map.src;
  for (int e = 0; e < static_cast<int>(h.map.size()); ++e) h.map[e] = ft.edge(f.map.tgt->name(g.map.map[e]));
  if (!is_valid(h)) return std::nullopt;
  return h;
}

// Elementary faces of a horn: all of them except the omitted inner face, or
// except those erasing the omitted external vertex.
inline std::vector<Face> horn_faces(const TreeRef& t, int omitted, bool inner) {
  if (inner && !t->is_inner(omitted)) throw Error("edge '" + t->name(omitted) + "' is not inner");
  if (!inner && !is_external_vertex(*t, omitted)) throw Error("vertex '" + t->name(omitted) + "' is not external");
  std::vector<Face> out;
  for (auto& f : elementary_faces(t))
    if (!(f.inner == inner && f.edge == omitted)) out.push_back(f);
  return out;
}

template <DendroidalSetLike X>
struct HornProblem {
  TreeRef tree;
  int omitted = 0;
  bool inner = true;
  std::vector<typename X::Dendrex> family;  // aligned with horn_faces(tree, omitted, inner)
};

// Pairs of horn faces with their common faces, as factorizations through each.
struct Overlap {
  std::size_t i, j;
  TreeMorphism via_i, via_j;
};

inline std::vector<Overlap> horn_overlaps(const TreeRef& t, const std::vector<Face>& faces) {
  auto all = all_faces(t);
  std::vector<FaceInclusion> fs;
  for (auto& f : faces) fs.push_back(make_face_inclusion(f.map));
  std::vector<Overlap> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      for (auto& g : all) {
        auto a = face_through(g, fs[i]);
        if (!a) continue;
        auto b = face_through(g, fs[j]);
        if (!b) continue;
        out.push_back({i, j, *a, *b});
      }
  return out;
}

template <DendroidalSetLike X>
bool horn_family_compatible(const X& x, const std::vector<Overlap>& overlaps,
                            const std::vector<typename X::Dendrex>& family) {
  for (auto& o : overlaps)
    if (!(x.act(o.via_i, family[o.i]) == x.act(o.via_j, family[o.j]))) return false;
  return true;
}

// All dendrices at the tree whose faces restrict to the family.
template <DendroidalSetLike X>
std::vector<typename X::Dendrex> solve_inner_horn(const X& x, const HornProblem<X>& pb) {
  auto faces = horn_faces(pb.tree, pb.omitted, pb.inner);
  if (faces.size() != pb.family.size()) throw Error("face family has the wrong length");
  if (!horn_family_compatible(x, horn_overlaps(pb.tree, faces), pb.family))
    throw Error("incompatible face family");
  std::vector<typename X::Dendrex> out;
  for (auto& d : x.dendrices(*pb.tree)) {
    bool ok = true;
    for (std::size_t i = 0; i < faces.size() && ok; ++i) ok = x.act(faces[i].map, d) == pb.family[i];
    if (ok) out.push_back(d);
  }
  return out;
}

// Calls visit(family) for every compatible family on the horn, by backtracking.
template <DendroidalSetLike X, class Visit>
void for_each_horn_family(const X& x, const TreeRef& t, int omitted, bool inner, Visit&& visit) {
  auto faces = horn_faces(t, omitted, inner);
  auto overlaps = horn_overlaps(t, faces);
  std::vector<std::vector<typename X::Dendrex>> cand;
  for (auto& f : faces) cand.push_back(x.dendrices(*f.map.src));
  std::vector<typename X::Dendrex> fam(faces.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == faces.size()) {
      visit(static_cast<const std::vector<typename X::Dendrex>&>(fam));
      return;
    }
    for (auto& d : cand[i]) {
      fam[i] = d;
      bool ok = true;
      for (auto& o : overlaps)
        if (o.j == i && !(x.act(o.via_i, fam[o.i]) == x.act(o.via_j, d))) {
          ok = false;
          break;
        }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
}

// ---------------------------------------------------------------- normality

struct NormalityReport {
  bool normal = true;
  std::string witness;
};

template <DendroidalSetLike X>
NormalityReport normality_report(const X& x, const std::vector<Tree>& trees) {
  for (auto& t : trees) {
    auto tr = make_ref(t);
    auto auts = automorphisms(tr);
    auto ds = x.dendrices(t);
    for (auto& s : auts) {
      if (is_identity(s.map)) continue;
      for (auto& d : ds)
        if (x.act(s, d) == d) return {false, t.str() + ": " + x.show(t, d) + " fixed by " + s.str()};
    }
  }
  return {};
}

template <DendroidalSetLike X>
bool is_normal(const X& x, int max_vertices, int max_arity = 3) {
  return normality_report(x, enumerate_trees(max_vertices, max_arity)).normal;
}

// Elements at shape s not in the image of any non-injective morphism out of s.
inline std::vector<int> nondegenerate(const TruncatedPresheaf& x, int s) {
  std::vector<char> deg(x.count(s), 0);
  for (auto& [k, v] : x.actions()) {
    auto& [src, tgt, m] = k;
    if (src != s) continue;
    if (std::set<int>(m.begin(), m.end()).size() == m.size()) continue;
    for (int y : v) deg[y] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < x.count(s); ++i)
    if (!deg[i]) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------- localization

// The walking isomorphism 0 <-> 1.
inline FiniteCategory walking_iso() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", 0, 0}, {"id1", 1, 1}, {"u", 0, 1}, {"v", 1, 0}};
  c.identity = {0, 1};
  auto arrow = [](int a, int b) { return a == b ? a : (a == 0 ? 2 : 3); };
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g)
      if (c.arrows[f].tgt == c.arrows[g].src) c.comp[{g, f}] = arrow(c.arrows[f].src, c.arrows[g].tgt);
  return c;
}

inline Nerve<FiniteOperad> walking_iso_nerve() { return Nerve<FiniteOperad>(from_category(walking_iso())); }

// Glues a copy of J along each chosen element of X at C_1, degreewise, within
// X's truncation bound.
inline TruncatedPresheaf localize_truncated(const TruncatedPresheaf& x, const std::vector<int>& arrows) {
  if (arrows.empty()) return x;
  if (x.max_vertices() < 1 || x.max_arity() < 1) throw Error("bound too small to represent attached cells");
  {
    std::vector<Tree> trees;
    for (auto& s : x.shapes()) trees.push_back(*s);
    auto rep = normality_report(x, trees);
    if (!rep.normal) throw Error("presheaf is not normal: " + rep.witness);
  }
  int k = x.max_vertices(), ar = x.max_arity();
  int c1 = x.shape_of(Tree::corolla(1));
  for (int s : arrows)
    if (s < 0 || s >= x.count(c1)) throw Error("no such element at C_1");
  const TreeRef& c1t = x.shapes()[c1];
  auto om = representable(c1t);
  auto jn = walking_iso_nerve();
  auto om_t = truncate(om, k, ar);
  auto j_t = truncate(jn, k, ar);
  std::vector<TruncatedPresheaf> as(arrows.size(), om_t), bs(arrows.size(), j_t);
  auto a = coproduct(as);
  auto b = coproduct(bs);
  PresheafMap ax(x.num_shapes()), ab(x.num_shapes());
  int leaf = c1t->leaves()[0], root = c1t->root();
  for (int s = 0; s < x.num_shapes(); ++s) {
    const TreeRef& r = x.shapes()[s];
    auto oms = om.dendrices(*r);
    auto js = jn.dendrices(*r);
    for (std::size_t i = 0; i < arrows.size(); ++i)
      for (auto& d : oms) {
        ax[s].push_back(x.act(as_morphism(r, om, d), arrows[i]));
        std::vector<int> cols(r->size());
        for (std::size_t e = 0; e < cols.size(); ++e) cols[e] = d.colors[e] == leaf ? 0 : (d.colors[e] == root ? 1 : -1);
        int idx = -1;
        for (std::size_t q = 0; q < js.size(); ++q)
          if (js[q].colors == cols) idx = static_cast<int>(q);
        if (idx < 0) throw Error("no dendrex of J over a dendrex of C_1");
        ab[s].push_back(static_cast<int>(i) * static_cast<int>(js.size()) + idx);
      }
  }
  return pushout(a, x, b, ax, ab);
}

// ---------------------------------------------------------------- homotopies

// A map of operads given by its action on colors and operations.
template <OperadLike P, OperadLike Q>
struct OperadFunctor {
  std::function<int(int)> obj;
  std::function<typename Q::Op(const typename P::Op&)> op;
};

struct HomotopyReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;
};

// h_c : F c -> G c for every color, and h_out ∘ F(f) = G(f) ∘ (h_1, ..., h_n)
// for every listed operation f.
template <OperadLike P, OperadLike Q>
HomotopyReport check_homotopy(const P& p, const Q& q, const std::vector<int>& colors,
                              const std::vector<typename P::Op>& ops, const OperadFunctor<P, Q>& f,
                              const OperadFunctor<P, Q>& g,
                              const std::function<std::optional<typename Q::Op>(int)>& h) {
  HomotopyReport rep;
  std::map<int, typename Q::Op> comp;
  auto get = [&](int c) -> const typename Q::Op& {
    auto it = comp.find(c);
    if (it != comp.end()) return it->second;
    auto o = h(c);
    if (!o) throw Error("missing component at color " + p.color_name(c));
    return comp.emplace(c, *o).first->second;
  };
  for (int c : colors) {
    const auto& hc = get(c);
    auto in = q.inputs(hc);
    if (in.size() != 1 || in[0] != f.obj(c) || q.output(hc) != g.obj(c)) {
      rep.ok = false;
      rep.failure = "component at " + p.color_name(c) + " has the wrong endpoints";
      return rep;
    }
    ++rep.checked;
  }
  for (const auto& o : ops) {
    auto in = p.inputs(o);
    auto lhs = q.compose(get(p.output(o)), 0, f.op(o));
    auto rhs = g.op(o);
    for (int i = static_cast<int>(in.size()) - 1; i >= 0; --i) rhs = q.compose(rhs, i, get(in[i]));
    ++rep.checked;
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.failure = "interchange fails at " + p.op_name(o) + ": " + q.op_name(lhs) + " vs " + q.op_name(rhs);
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- simplicial specialization

// A simplex of the nerve of a category, read off a dendrex on a linear tree.
struct Chain {
  std::vector<int> objects;  // x_0 .. x_n
  std::vector<int> arrows;   // x_{i-1} -> x_i
};

inline Chain chain_of(const Tree& t, const Nerve<FiniteOperad>::Dendrex& d) {
  if (!t.is_linear()) throw Error("non-linear dendrex encountered");
  Chain c;
  int e = t.root();
  std::vector<int> path{e};
  while (t.has_vertex(e)) {
    if (t.kids(e).empty()) throw Error("non-linear dendrex encountered");
    e = t.kids(e)[0];
    path.push_back(e);
  }
  std::reverse(path.begin(), path.end());
  for (int x : path) c.objects.push_back(d.colors[x]);
  for (std::size_t i = 1; i < path.size(); ++i) c.arrows.push_back(d.ops[path[i]]);
  return c;
}

// ([n], x) -> x_n
inline int last_vertex(const Chain& x) { return x.objects.back(); }

// The image of θ: ([m], x) -> ([n], y) with x = y∘θ: the composite y_{θ(m)} -> y_n.
inline int last_vertex_arrow(const FiniteCategory& c, const Chain& y, int theta_m) {
  int a = c.identity.at(y.objects.at(theta_m));
  for (std::size_t i = theta_m; i < y.arrows.size(); ++i) a = c.compose(y.arrows[i], a);
  return a;
}

}  // namespace dendro
