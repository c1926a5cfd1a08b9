#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dendro/elements.hpp"
#include "dendro/morphism.hpp"
#include "dendro/operad.hpp"

namespace dendro {

// Data of an operadic décalage on a finite category A. The arrays live in an
// ambient category B: objects [0, num_domain_objects) are A, the rest are only
// reached through D. An arrow belongs to A when both ends do.
struct DecalageData {
  std::vector<std::string> objects;
  std::vector<FiniteCategory::Arrow> arrows;
  std::vector<int> identity;
  std::function<int(int, int)> compose;  // (g, f) -> g∘f, or -1
  int num_domain_objects = 0;

  std::vector<FiniteOperad> omega;       // per object
  std::vector<OperadMorphism> omega_map; // per arrow
  std::vector<int> root;                 // per object of A; -1 only when Ω(a) has no objects
  int w = 0;
  std::vector<int> D_obj;  // per object of A
  std::vector<int> D_arr;  // per arrow; -1 where undefined or outside A
  std::vector<int> iota;   // per object of A: a -> D a
  std::vector<int> gamma;  // per object of A: ω -> D a

  bool in_domain(int a) const { return a < num_domain_objects; }
  bool arrow_in_domain(int f) const { return in_domain(arrows[f].src) && in_domain(arrows[f].tgt); }
};

inline DecalageData decalage_from_category(const FiniteCategory& c) {
  DecalageData d;
  d.objects = c.objects;
  d.arrows = c.arrows;
  d.identity = c.identity;
  auto comp = std::make_shared<const std::map<std::pair<int, int>, int>>(c.comp);
  d.compose = [comp](int g, int f) {
    auto it = comp->find({g, f});
    return it == comp->end() ? -1 : it->second;
  };
  d.num_domain_objects = static_cast<int>(c.objects.size());
  return d;
}

inline OperadMorphism compose_morphisms(const OperadMorphism& g, const OperadMorphism& f) {
  OperadMorphism r{std::vector<int>(f.on_objects.size()), std::vector<int>(f.on_ops.size())};
  for (std::size_t c = 0; c < r.on_objects.size(); ++c) r.on_objects[c] = g.on_objects.at(f.on_objects[c]);
  for (std::size_t o = 0; o < r.on_ops.size(); ++o) r.on_ops[o] = g.on_ops.at(f.on_ops[o]);
  return r;
}

inline OperadMorphism identity_operad_morphism(const FiniteOperad& p) {
  return {identity_perm(p.num_colors()), identity_perm(p.num_ops())};
}

struct DecalageCheck {
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;
};

struct DecalageReport {
  std::vector<DecalageCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const DecalageCheck& c) { return c.ok; });
  }
  const DecalageCheck& at(const std::string& name) const {
    for (auto& c : checks)
      if (c.name == name) return c;
    throw Error("no check named " + name);
  }
};

namespace detail {

// Whether p -> r ×_s q (from the square v, u over w, x) is bijective.
inline std::optional<std::string> cartesian(const FiniteOperad& p, const FiniteOperad& q, const FiniteOperad& r,
                                            const FiniteOperad& s, const OperadMorphism& u, const OperadMorphism& v,
                                            const OperadMorphism& w, const OperadMorphism& x) {
  (void)s;
  for (int c = 0; c < p.num_colors(); ++c)
    if (x.on_objects[u.on_objects[c]] != w.on_objects[v.on_objects[c]]) return "square does not commute on objects";
  for (int o = 0; o < p.num_ops(); ++o)
    if (x.on_ops[u.on_ops[o]] != w.on_ops[v.on_ops[o]]) return "square does not commute on operations";
  auto pairs = [](int nr, int nq, const std::vector<int>& wr, const std::vector<int>& xq) {
    std::map<int, std::size_t> a, b;
    for (int i = 0; i < nr; ++i) ++a[wr[i]];
    for (int i = 0; i < nq; ++i) ++b[xq[i]];
    std::size_t n = 0;
    for (auto& [k, m] : a)
      if (b.count(k)) n += m * b[k];
    return n;
  };
  std::set<std::pair<int, int>> seen;
  for (int c = 0; c < p.num_colors(); ++c) seen.insert({v.on_objects[c], u.on_objects[c]});
  std::size_t pc = pairs(r.num_colors(), q.num_colors(), w.on_objects, x.on_objects);
  if (seen.size() != static_cast<std::size_t>(p.num_colors()) || pc != seen.size())
    return "objects: " + std::to_string(p.num_colors()) + " vs pullback " + std::to_string(pc);
  seen.clear();
  for (int o = 0; o < p.num_ops(); ++o) seen.insert({v.on_ops[o], u.on_ops[o]});
  std::size_t po = pairs(r.num_ops(), q.num_ops(), w.on_ops, x.on_ops);
  if (seen.size() != static_cast<std::size_t>(p.num_ops()) || po != seen.size())
    return "operations: " + std::to_string(p.num_ops()) + " vs pullback " + std::to_string(po);
  return std::nullopt;
}

}  // namespace detail

inline DecalageReport validate_decalage(const DecalageData& d) {
  DecalageReport rep;
  int n = d.num_domain_objects;
  int na = static_cast<int>(d.arrows.size());
  std::vector<int> a_arrows;
  for (int f = 0; f < na; ++f)
    if (d.arrow_in_domain(f)) a_arrows.push_back(f);
  std::vector<std::vector<int>> out_of(d.objects.size());
  for (int f : a_arrows) out_of[d.arrows[f].src].push_back(f);
  auto fail = [](DecalageCheck& c, const std::string& w) {
    if (c.ok) c.witness = w;
    c.ok = false;
  };
  auto name = [&](int f) { return f < 0 ? std::string("<undefined>") : d.arrows[f].name; };

  DecalageCheck cat{"category"};
  for (int f = 0; f < na; ++f) {
    const auto& ar = d.arrows[f];
    if (d.compose(d.identity[ar.tgt], f) != f || d.compose(f, d.identity[ar.src]) != f) fail(cat, "unit law at " + name(f));
    ++cat.checked;
  }
  for (int f : a_arrows)
    for (int g : out_of[d.arrows[f].tgt]) {
      int gf = d.compose(g, f);
      if (gf < 0 || d.arrows[gf].src != d.arrows[f].src || d.arrows[gf].tgt != d.arrows[g].tgt)
        fail(cat, "composite " + name(g) + " o " + name(f));
      ++cat.checked;
    }
  rep.checks.push_back(cat);

  DecalageCheck om{"omega functor"};
  for (int f = 0; f < na; ++f) {
    const auto& ar = d.arrows[f];
    if (auto e = check_morphism(d.omega[ar.src], d.omega[ar.tgt], d.omega_map[f])) fail(om, name(f) + ": " + *e);
    ++om.checked;
  }
  for (int a = 0; a < static_cast<int>(d.objects.size()); ++a)
    if (!(d.omega_map[d.identity[a]] == identity_operad_morphism(d.omega[a]))) fail(om, "identity at " + d.objects[a]);
  if (om.ok)
    for (int f : a_arrows)
      for (int g : out_of[d.arrows[f].tgt]) {
        int gf = d.compose(g, f);
        if (gf < 0) continue;
        if (!(d.omega_map[gf] == compose_morphisms(d.omega_map[g], d.omega_map[f])))
          fail(om, "composite " + name(g) + " o " + name(f));
        ++om.checked;
      }
  rep.checks.push_back(om);

  DecalageCheck fin{"final roots"};
  for (int a = 0; a < n; ++a) {
    const auto& p = d.omega[a];
    ++fin.checked;
    if (d.root[a] < 0) {
      if (p.num_colors() != 0) fail(fin, "no root chosen at " + d.objects[a]);
      continue;
    }
    std::map<std::vector<int>, int> count;
    for (int o = 0; o < p.num_ops(); ++o)
      if (p.output(o) == d.root[a] && ++count[p.inputs(o)] > 1) fail(fin, "root not final at " + d.objects[a]);
  }
  rep.checks.push_back(fin);

  DecalageCheck df{"D functor"};
  for (int a = 0; a < n; ++a)
    if (d.D_arr[d.identity[a]] != d.identity[d.D_obj[a]]) fail(df, "D(id) at " + d.objects[a]);
  for (int f : a_arrows) {
    ++df.checked;
    int g = d.D_arr[f];
    if (g < 0) {
      fail(df, "D undefined at " + name(f));
      continue;
    }
    if (d.arrows[g].src != d.D_obj[d.arrows[f].src] || d.arrows[g].tgt != d.D_obj[d.arrows[f].tgt])
      fail(df, "D(" + name(f) + ") has the wrong endpoints");
  }
  for (int f : a_arrows)
    for (int g : out_of[d.arrows[f].tgt]) {
      int gf = d.compose(g, f);
      if (gf < 0 || d.D_arr[f] < 0 || d.D_arr[g] < 0) continue;
      if (d.D_arr[gf] != d.compose(d.D_arr[g], d.D_arr[f])) fail(df, "D does not preserve " + name(g) + " o " + name(f));
      ++df.checked;
    }
  rep.checks.push_back(df);

  DecalageCheck ni{"iota natural"}, ng{"gamma natural"};
  for (int a = 0; a < n; ++a) {
    const auto& i = d.arrows[d.iota[a]];
    const auto& g = d.arrows[d.gamma[a]];
    if (i.src != a || i.tgt != d.D_obj[a]) fail(ni, "iota endpoints at " + d.objects[a]);
    if (g.src != d.w || g.tgt != d.D_obj[a]) fail(ng, "gamma endpoints at " + d.objects[a]);
  }
  for (int f : a_arrows) {
    int a = d.arrows[f].src, b = d.arrows[f].tgt, D = d.D_arr[f];
    if (D < 0) continue;
    if (d.compose(D, d.iota[a]) != d.compose(d.iota[b], f)) fail(ni, "square at " + name(f));
    if (d.compose(D, d.gamma[a]) != d.gamma[b]) fail(ng, "triangle at " + name(f));
    ++ni.checked;
    ++ng.checked;
  }
  rep.checks.push_back(ni);
  rep.checks.push_back(ng);

  // (1) Ω(ι_a) injective on objects and a discrete fibration; lifts must be unique
  DecalageCheck ax1{"axiom 1"};
  for (int a = 0; a < n; ++a) {
    const auto& p = d.omega[a];
    const auto& q = d.omega[d.D_obj[a]];
    const auto& u = d.omega_map[d.iota[a]];
    ++ax1.checked;
    std::vector<char> img(q.num_colors(), 0);
    for (int c = 0; c < p.num_colors(); ++c) {
      if (img[u.on_objects[c]]) fail(ax1, "not injective on objects at " + d.objects[a]);
      img[u.on_objects[c]] = 1;
    }
    std::vector<int> lifts(q.num_ops(), 0);
    for (int o = 0; o < p.num_ops(); ++o) ++lifts[u.on_ops[o]];
    for (int o = 0; o < q.num_ops(); ++o) {
      if (!img[q.output(o)]) continue;
      if (lifts[o] == 0) fail(ax1, "operation " + q.op_name(o) + " has no lift at " + d.objects[a]);
      if (lifts[o] > 1) fail(ax1, "operation " + q.op_name(o) + " has a non-unique lift at " + d.objects[a]);
    }
  }
  rep.checks.push_back(ax1);

  // (2) cartesian squares
  DecalageCheck ax2{"axiom 2"};
  for (int f : a_arrows) {
    int D = d.D_arr[f];
    if (D < 0) continue;
    int a = d.arrows[f].src, b = d.arrows[f].tgt;
    auto e = detail::cartesian(d.omega[a], d.omega[d.D_obj[a]], d.omega[b], d.omega[d.D_obj[b]],
                               d.omega_map[d.iota[a]], d.omega_map[f], d.omega_map[d.iota[b]], d.omega_map[D]);
    if (e) fail(ax2, name(f) + ": " + *e);
    ++ax2.checked;
  }
  rep.checks.push_back(ax2);

  // (3) the pullback of Ω(γ_a) and Ω(ι_a) is empty
  DecalageCheck ax3{"axiom 3"};
  for (int a = 0; a < n; ++a) {
    const auto& g = d.omega_map[d.gamma[a]];
    const auto& i = d.omega_map[d.iota[a]];
    std::set<int> gi(g.on_objects.begin(), g.on_objects.end());
    for (int c : i.on_objects)
      if (gi.count(c)) fail(ax3, "nonempty pullback at " + d.objects[a]);
    ++ax3.checked;
  }
  rep.checks.push_back(ax3);
  return rep;
}

// ---------------------------------------------------------------- dendroidal instance

struct DendroidalDecalage {
  DecalageData data;
  std::vector<TreeRef> trees;          // per object
  std::vector<TreeMorphism> morphisms; // per arrow
};

inline OperadMorphism omega_of(const TreeMorphism& f, const FiniteOperad& ps, const FiniteOperad& pt) {
  OperadMorphism m{f.map, std::vector<int>(ps.num_ops())};
  for (int o = 0; o < ps.num_ops(); ++o) {
    std::vector<int> in;
    for (int c : ps.inputs(o)) in.push_back(f.map[c]);
    auto v = pt.ops(in, f.map[ps.output(o)]);
    if (v.size() != 1) throw Error("tree morphism does not induce an operad map");
    m.on_ops[o] = v[0];
  }
  return m;
}

// Ω = free operad, r_T = root, ω = η, D = - ⋆ η on trees with at most
// max_vertices vertices and arity at most max_arity. With wide_only, A keeps
// only maps whose root image spans an operation to the root.
inline DendroidalDecalage dendroidal_decalage(int max_vertices, int max_arity, bool wide_only = false) {
  DendroidalDecalage out;
  DecalageData& d = out.data;
  std::map<std::string, int> by_code;
  auto add_tree = [&](const Tree& t) {
    auto code = tree_code(t);
    auto it = by_code.find(code);
    if (it != by_code.end()) return it->second;
    int id = static_cast<int>(out.trees.size());
    by_code.emplace(code, id);
    out.trees.push_back(make_ref(canonical_tree(t)));
    d.objects.push_back(out.trees.back()->str());
    return id;
  };
  for (auto& t : enumerate_trees(max_vertices, max_arity)) add_tree(t);
  d.num_domain_objects = static_cast<int>(out.trees.size());
  int n = d.num_domain_objects;
  d.w = by_code.at(tree_code(Tree::eta()));
  std::vector<Join> joins;
  std::vector<TreeMorphism> to_rep;  // join tree -> representative
  for (int a = 0; a < n; ++a) {
    joins.push_back(join_eta(*out.trees[a]));
    int b = add_tree(joins.back().tree);
    d.D_obj.push_back(b);
    to_rep.push_back(canonical_iso(make_ref(joins.back().tree), out.trees[b]));
  }
  for (auto& t : out.trees) d.omega.push_back(materialize(TreeOperad(t), static_cast<int>(t->size())));

  auto index = std::make_shared<std::map<std::tuple<int, int, std::vector<int>>, int>>();
  auto add_arrow = [&](int s, int t, const TreeMorphism& f) {
    int id = static_cast<int>(out.morphisms.size());
    index->emplace(std::tuple{s, t, f.map}, id);
    out.morphisms.push_back(f);
    d.arrows.push_back({d.objects[s] + " -> " + d.objects[t] + " " + f.str(), s, t});  // names are unique
    d.omega_map.push_back(omega_of(f, d.omega[s], d.omega[t]));
  };
  int nb = static_cast<int>(out.trees.size());
  for (int s = 0; s < nb; ++s)
    for (int t = 0; t < nb; ++t)
      for (auto& f : hom(out.trees[s], out.trees[t])) {
        bool in_a = s < n && t < n;
        if (in_a && wide_only && !spans(*f.tgt, f.tgt->root(), std::vector<int>{f.map[f.src->root()]})) continue;
        add_arrow(s, t, f);
      }
  auto find = [index](int s, int t, const std::vector<int>& m) {
    auto it = index->find({s, t, m});
    return it == index->end() ? -1 : it->second;
  };
  for (int a = 0; a < nb; ++a) d.identity.push_back(find(a, a, identity_perm(static_cast<int>(out.trees[a]->size()))));
  auto src = std::make_shared<std::vector<std::pair<int, int>>>();
  for (auto& ar : d.arrows) src->push_back({ar.src, ar.tgt});
  auto maps = std::make_shared<std::vector<std::vector<int>>>();
  for (auto& f : out.morphisms) maps->push_back(f.map);
  d.compose = [find, src, maps](int g, int f) {
    if ((*src)[f].second != (*src)[g].first) return -1;
    const auto& mf = (*maps)[f];
    const auto& mg = (*maps)[g];
    std::vector<int> m(mf.size());
    for (std::size_t e = 0; e < m.size(); ++e) m[e] = mg[mf[e]];
    return find((*src)[f].first, (*src)[g].second, m);
  };
  d.root.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    const Tree& t = *out.trees[a];
    const auto& j = joins[a];
    std::vector<int> im(t.size());
    for (std::size_t e = 0; e < t.size(); ++e) im[e] = to_rep[a].map[j.iota[e]];
    d.iota.push_back(find(a, d.D_obj[a], im));
    d.gamma.push_back(find(d.w, d.D_obj[a], std::vector<int>{to_rep[a].map[j.gamma]}));
  }
  // D(f): S⋆η -> T⋆η extends f by the new root; undefined when that is not a tree morphism
  d.D_arr.assign(d.arrows.size(), -1);
  for (int f = 0; f < static_cast<int>(d.arrows.size()); ++f) {
    if (!d.arrow_in_domain(f)) continue;
    int s = d.arrows[f].src, t = d.arrows[f].tgt;
    const auto& js = joins[s];
    const auto& jt = joins[t];
    std::vector<int> m(js.tree.size());
    for (std::size_t e = 0; e < out.trees[s]->size(); ++e) m[js.iota[e]] = jt.iota[out.morphisms[f].map[e]];
    m[js.gamma] = jt.gamma;
    TreeMorphism raw{make_ref(js.tree), make_ref(jt.tree), m};
    if (!is_valid(raw)) continue;
    auto df = compose(to_rep[t], compose(raw, inverse(to_rep[s])));
    d.D_arr[f] = find(d.D_obj[s], d.D_obj[t], df.map);
  }
  return out;
}

// ---------------------------------------------------------------- generic operad of elements

// A presheaf on A: X(a) has sizes[a] elements, act[f] : X(tgt f) -> X(src f)
// for arrows of A.
struct FinitePresheaf {
  std::vector<int> sizes;
  std::vector<std::vector<int>> act;
};

class GenericElements {
 public:
  struct Op {
    int out = 0;
    std::vector<int> in;
    std::vector<int> arrows;
    auto operator<=>(const Op&) const = default;
    bool operator==(const Op&) const = default;
  };

  GenericElements(std::shared_ptr<const DecalageData> d, FinitePresheaf x) : d_(std::move(d)), x_(std::move(x)) {
    const auto& dd = *d_;
    int n = dd.num_domain_objects;
    index_.resize(n);
    for (int a = 0; a < n; ++a) {
      if (dd.root[a] < 0) continue;  // no root: carries no operations, not even a unit
      for (int e = 0; e < x_.sizes[a]; ++e) {
        index_[a].push_back(static_cast<int>(objects_.size()));
        objects_.push_back({a, e});
      }
    }
    into_.resize(n);
    for (int f = 0; f < static_cast<int>(dd.arrows.size()); ++f)
      if (dd.arrow_in_domain(f) && dd.root[dd.arrows[f].src] >= 0 && dd.root[dd.arrows[f].tgt] >= 0) {
        int b = dd.arrows[f].tgt;
        into_[b][dd.omega_map[f].on_objects[dd.root[dd.arrows[f].src]]].push_back(f);
      }
    for (int a = 0; a < n; ++a)
      poset_.push_back(object_poset(dd.omega[a], std::max(1, dd.omega[a].num_colors())));
  }

  const DecalageData& data() const { return *d_; }
  const FinitePresheaf& presheaf() const { return x_; }
  int num_colors() const { return static_cast<int>(objects_.size()); }
  std::pair<int, int> object(int c) const { return objects_.at(c); }
  int object_index(int a, int e) const { return index_.at(a).at(e); }
  std::string color_name(int c) const {
    return "(" + d_->objects[objects_[c].first] + "," + std::to_string(objects_[c].second) + ")";
  }

  const std::vector<int>& inputs(const Op& o) const { return o.in; }
  int output(const Op& o) const { return o.out; }

  std::vector<Op> ops_into(int c, int n) const {
    const auto& dd = *d_;
    auto [b, g] = objects_.at(c);
    const auto& leq = poset_[b];
    std::vector<Op> out;
    std::vector<int> roots;
    Op o{c, std::vector<int>(n), std::vector<int>(n)};
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        if (!dd.omega[b].ops(roots, dd.root[b]).empty()) out.push_back(o);
        return;
      }
      for (auto& [e, fs] : into_[b]) {
        bool ok = true;
        for (int r : roots)
          if (leq[r][e] || leq[e][r]) ok = false;
        if (!ok) continue;
        roots.push_back(e);
        for (int f : fs) {
          o.arrows[i] = f;
          o.in[i] = index_[dd.arrows[f].src][x_.act[f][g]];
          rec(i + 1);
        }
        roots.pop_back();
      }
    };
    rec(0);
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
        r.arrows.push_back(p.arrows[j]);
        continue;
      }
      for (std::size_t k = 0; k < q.in.size(); ++k) {
        r.in.push_back(q.in[k]);
        r.arrows.push_back(d_->compose(p.arrows[i], q.arrows[k]));
      }
    }
    return r;
  }
  Op act(const Op& p, const Perm& s) const {
    Op r{p.out, std::vector<int>(s.size()), std::vector<int>(s.size())};
    for (std::size_t j = 0; j < s.size(); ++j) {
      r.in[j] = p.in.at(s[j]);
      r.arrows[j] = p.arrows.at(s[j]);
    }
    return r;
  }
  Op unit(int c) const { return Op{c, {c}, {d_->identity[objects_.at(c).first]}}; }
  std::string op_name(const Op& o) const {
    std::string s = "(";
    for (std::size_t i = 0; i < o.in.size(); ++i) s += (i ? ", " : "") + d_->arrows[o.arrows[i]].name;
    return s + " -> " + color_name(o.out) + ")";
  }

 private:
  std::shared_ptr<const DecalageData> d_;
  FinitePresheaf x_;
  std::vector<std::pair<int, int>> objects_;
  std::vector<std::vector<int>> index_;
  std::vector<std::map<int, std::vector<int>>> into_;  // b -> root image -> arrows
  std::vector<std::vector<std::vector<char>>> poset_;
};

// N_Ω P: X(a) = operad maps Ω(a) -> P, acted on by precomposition.
struct OmegaNerve {
  FinitePresheaf presheaf;
  std::vector<std::vector<OperadMorphism>> elements;
};

inline OmegaNerve omega_nerve(const DecalageData& d, const FiniteOperad& p) {
  OmegaNerve out;
  int n = d.num_domain_objects;
  std::vector<std::map<std::pair<std::vector<int>, std::vector<int>>, int>> idx(n);
  for (int a = 0; a < n; ++a) {
    out.elements.push_back(enumerate_morphisms(d.omega[a], p));
    for (int e = 0; e < static_cast<int>(out.elements[a].size()); ++e)
      idx[a][{out.elements[a][e].on_objects, out.elements[a][e].on_ops}] = e;
    out.presheaf.sizes.push_back(static_cast<int>(out.elements[a].size()));
  }
  out.presheaf.act.resize(d.arrows.size());
  for (int f = 0; f < static_cast<int>(d.arrows.size()); ++f) {
    if (!d.arrow_in_domain(f)) continue;
    int s = d.arrows[f].src, t = d.arrows[f].tgt;
    for (auto& g : out.elements[t]) {
      auto h = compose_morphisms(g, d.omega_map[f]);
      out.presheaf.act[f].push_back(idx[s].at({h.on_objects, h.on_ops}));
    }
  }
  return out;
}

// The final object functor A/N_Ω P -> P.
inline int final_object(const GenericElements& e, const OmegaNerve& x, int c) {
  auto [a, g] = e.object(c);
  return x.elements[a][g].on_objects[e.data().root[a]];
}

inline int final_op(const GenericElements& e, const OmegaNerve& x, const GenericElements::Op& o) {
  const auto& d = e.data();
  auto [b, g] = e.object(o.out);
  std::vector<int> roots;
  for (int f : o.arrows) roots.push_back(d.omega_map[f].on_objects[d.root[d.arrows[f].src]]);
  auto v = d.omega[b].ops(roots, d.root[b]);
  if (v.size() != 1) throw Error("wideness does not single out an operation");
  return x.elements[b][g].on_ops[v[0]];
}

inline FunctorReport check_final_object_functor(const GenericElements& e, const OmegaNerve& x, const FiniteOperad& p,
                                                int max_arity) {
  FunctorReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.failure = m;
    return rep;
  };
  std::vector<GenericElements::Op> all;
  for (int c = 0; c < e.num_colors(); ++c) {
    if (final_op(e, x, e.unit(c)) != p.unit(final_object(e, x, c))) return fail("unit at " + e.color_name(c));
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : e.ops_into(c, n)) {
        int q = final_op(e, x, o);
        std::vector<int> in;
        for (int i : o.in) in.push_back(final_object(e, x, i));
        if (p.inputs(q) != in || p.output(q) != final_object(e, x, c)) return fail("signature at " + e.op_name(o));
        for (auto& s : all_perms(n))
          if (final_op(e, x, e.act(o, s)) != p.act(q, s)) return fail("Σ-action at " + e.op_name(o));
        ++rep.ops_checked;
        all.push_back(std::move(o));
      }
  }
  std::map<int, std::vector<const GenericElements::Op*>> by_out;
  for (auto& o : all) by_out[o.out].push_back(&o);
  for (auto& a : all)
    for (std::size_t i = 0; i < a.in.size(); ++i)
      for (auto* b : by_out[a.in[i]]) {
        if (a.in.size() + b->in.size() - 1 > static_cast<std::size_t>(max_arity)) continue;
        auto ab = e.compose(a, static_cast<int>(i), *b);
        if (final_op(e, x, ab) != p.compose(final_op(e, x, a), static_cast<int>(i), final_op(e, x, *b)))
          return fail("composition at " + e.op_name(a));
        ++rep.compositions_checked;
      }
  return rep;
}

// r_Q ∘ (A/N_Ω m) = m ∘ r_P for an operad morphism m : P -> Q.
inline FunctorReport check_final_object_naturality(const std::shared_ptr<const DecalageData>& d, const FiniteOperad& p,
                                                   const FiniteOperad& q, const OperadMorphism& m, int max_arity) {
  FunctorReport rep;
  auto xp = omega_nerve(*d, p);
  auto xq = omega_nerve(*d, q);
  GenericElements ep(d, xp.presheaf), eq(d, xq.presheaf);
  auto push = [&](int c) {
    auto [a, g] = ep.object(c);
    auto h = compose_morphisms(m, xp.elements[a][g]);
    for (int k = 0; k < static_cast<int>(xq.elements[a].size()); ++k)
      if (xq.elements[a][k] == h) return eq.object_index(a, k);
    throw Error("pushed element not found");
  };
  for (int c = 0; c < ep.num_colors(); ++c) {
    if (final_object(eq, xq, push(c)) != m.on_objects[final_object(ep, xp, c)]) {
      rep.ok = false;
      rep.failure = "objects at " + ep.color_name(c);
      return rep;
    }
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : ep.ops_into(c, n)) {
        GenericElements::Op po{push(o.out), {}, o.arrows};
        for (int i : o.in) po.in.push_back(push(i));
        ++rep.ops_checked;
        if (final_op(eq, xq, po) != m.on_ops[final_op(ep, xp, o)]) {
          rep.ok = false;
          rep.failure = "operations at " + ep.op_name(o);
          return rep;
        }
      }
  }
  return rep;
}

struct ElementsComparison {
  bool ok = true;
  std::size_t objects = 0, operations = 0;
  std::string failure;
};

// The generic construction on the dendroidal instance against ElementsOperad
// over N_d P, object by object, operation by operation, and through the final
// object / root functors. Both sides must use the same vertex and arity bounds.
inline ElementsComparison compare_with_elements(const DendroidalDecalage& dd, const FiniteOperad& p, int max_arity) {
  ElementsComparison rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.failure = m;
    return rep;
  };
  auto d = std::make_shared<const DecalageData>(dd.data);
  auto x = omega_nerve(*d, p);
  GenericElements ge(d, x.presheaf);
  int max_v = 0, max_ar = 0;
  for (int a = 0; a < d->num_domain_objects; ++a) {
    max_v = std::max(max_v, dd.trees[a]->num_vertices());
    max_ar = std::max(max_ar, dd.trees[a]->max_arity());
  }
  NerveElements<FiniteOperad> el(Nerve<FiniteOperad>(p), max_v, max_ar);
  if (el.num_colors() != ge.num_colors())
    return fail("object counts " + std::to_string(ge.num_colors()) + " vs " + std::to_string(el.num_colors()));
  std::vector<int> to_el(ge.num_colors());
  std::set<int> hit;
  for (int c = 0; c < ge.num_colors(); ++c) {
    auto [a, g] = ge.object(c);
    const Tree& t = *dd.trees[a];
    const auto& m = x.elements[a][g];
    Nerve<FiniteOperad>::Dendrex alpha{m.on_objects, std::vector<int>(t.size())};
    for (int e = 0; e < static_cast<int>(t.size()); ++e) {
      std::vector<int> in = t.has_vertex(e) ? t.kids(e) : std::vector<int>{e};
      alpha.ops[e] = m.on_ops[d->omega[a].ops(in, e).at(0)];
    }
    auto s = el.find_shape(t);
    if (!s || el.shape_tree(*s)->str() != t.str()) return fail("shape missing: " + t.str());
    auto o = el.find_object(*s, alpha);
    if (!o) return fail("object missing: " + ge.color_name(c));
    to_el[c] = *o;
    hit.insert(*o);
    if (root_object(el, *o) != final_object(ge, x, c)) return fail("final object vs root at " + ge.color_name(c));
    ++rep.objects;
  }
  if (hit.size() != to_el.size()) return fail("object map not injective");
  for (int c = 0; c < ge.num_colors(); ++c)
    for (int n = 0; n <= max_arity; ++n) {
      std::set<NerveElements<FiniteOperad>::Op> mine;
      for (auto& o : ge.ops_into(c, n)) {
        NerveElements<FiniteOperad>::Op eo{to_el[o.out], {}, {}};
        for (std::size_t i = 0; i < o.in.size(); ++i) {
          eo.in.push_back(to_el[o.in[i]]);
          eo.maps.push_back(dd.morphisms[o.arrows[i]].map);
        }
        if (root_op(el, eo) != final_op(ge, x, o)) return fail("final object functor vs root functor at " + ge.op_name(o));
        mine.insert(std::move(eo));
        ++rep.operations;
      }
      auto theirs = el.ops_into(to_el[c], n);
      std::set<NerveElements<FiniteOperad>::Op> ts(theirs.begin(), theirs.end());
      if (mine != ts) return fail("operation sets differ at " + ge.color_name(c) + ", arity " + std::to_string(n));
    }
  return rep;
}

}  // namespace dendro
