#pragma once

#include <set>
#include <string>
#include <vector>

#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

// A map of trees, i.e. an operad map Ω(S) -> Ω(T), given by its edge function.
struct TreeMorphism {
  TreeRef src, tgt;
  std::vector<int> map;  // edge of src -> edge of tgt

  int operator()(int e) const { return map.at(e); }
  bool operator==(const TreeMorphism& o) const {
    return map == o.map && (src == o.src || *src == *o.src) && (tgt == o.tgt || *tgt == *o.tgt);
  }
  std::string str() const {
    std::string s = "{";
    for (std::size_t e = 0; e < map.size(); ++e)
      s += (e ? "," : "") + src->name(static_cast<int>(e)) + ":" + tgt->name(map[e]);
    return s + "}";
  }
};

inline bool is_valid(const TreeMorphism& f) {
  const Tree& s = *f.src;
  if (f.map.size() != s.size()) return false;
  for (int x : f.map)
    if (x < 0 || x >= static_cast<int>(f.tgt->size())) return false;
  for (int e : s.vertex_edges()) {
    std::vector<int> img;
    for (int k : s.kids(e)) img.push_back(f.map[k]);
    if (!spans(*f.tgt, f.map[e], img)) return false;
  }
  return true;
}

inline TreeMorphism identity_morphism(const TreeRef& t) {
  return {t, t, identity_perm(static_cast<int>(t->size()))};
}

// g∘f
inline TreeMorphism compose(const TreeMorphism& g, const TreeMorphism& f) {
  if (!(f.tgt == g.src || *f.tgt == *g.src)) throw Error("tree morphisms are not composable");
  TreeMorphism h{f.src, g.tgt, std::vector<int>(f.map.size())};
  for (std::size_t e = 0; e < f.map.size(); ++e) h.map[e] = g.map[f.map[e]];
  return h;
}

// Builds a morphism from a name-to-name assignment.
inline TreeMorphism morphism_by_names(const TreeRef& s, const TreeRef& t,
                                      const std::map<std::string, std::string>& m) {
  TreeMorphism f{s, t, std::vector<int>(s->size())};
  for (int e = 0; e < static_cast<int>(s->size()); ++e) {
    auto it = m.find(s->name(e));
    f.map[e] = t->edge(it == m.end() ? s->name(e) : it->second);
  }
  return f;
}

inline bool is_injective(const TreeMorphism& f) {
  std::set<int> s(f.map.begin(), f.map.end());
  return s.size() == f.map.size();
}

inline bool is_root_preserving(const TreeMorphism& f) { return f.map[f.src->root()] == f.tgt->root(); }

inline bool is_iso(const TreeMorphism& f) {
  if (f.src->size() != f.tgt->size() || !is_injective(f) || !is_valid(f)) return false;
  TreeMorphism inv{f.tgt, f.src, perm_inverse(f.map)};
  return is_valid(inv);
}

// The canonical isomorphism t -> rep, where rep is canonical_tree(t).
inline TreeMorphism canonical_iso(const TreeRef& t, const TreeRef& rep) {
  auto cf = canonical_form(*t);
  TreeMorphism phi{t, rep, std::vector<int>(t->size())};
  for (int e = 0; e < static_cast<int>(t->size()); ++e)
    phi.map[e] = rep->edge("t" + std::to_string(cf.relabeling.at(t->name(e))));
  return phi;
}

inline TreeMorphism inverse(const TreeMorphism& f) { return {f.tgt, f.src, perm_inverse(f.map)}; }

// Calls visit(f) for every morphism s -> t.
template <class Visit>
void for_each_hom(const TreeRef& s, const TreeRef& t, Visit&& visit,
                  const std::vector<std::vector<std::vector<int>>>* ls_in = nullptr) {
  std::vector<std::vector<std::vector<int>>> own;
  if (!ls_in) own = leafsets(*t);
  const auto& ls = ls_in ? *ls_in : own;
  std::vector<int> verts = s->vertex_edges();  // preorder: parents first
  TreeMorphism f{s, t, std::vector<int>(s->size(), -1)};
  std::function<void(std::size_t)> rec = [&](std::size_t vi) {
    if (vi == verts.size()) {
      visit(static_cast<const TreeMorphism&>(f));
      return;
    }
    int e = verts[vi];
    const auto& ks = s->kids(e);
    for (const auto& l : ls[f.map[e]]) {
      if (l.size() != ks.size()) continue;
      auto p = l;
      do {
        for (std::size_t j = 0; j < ks.size(); ++j) f.map[ks[j]] = p[j];
        rec(vi + 1);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    for (int k : ks) f.map[k] = -1;
  };
  for (int x = 0; x < static_cast<int>(t->size()); ++x) {
    f.map[s->root()] = x;
    rec(0);
  }
}

inline std::vector<TreeMorphism> hom(const TreeRef& s, const TreeRef& t) {
  std::vector<TreeMorphism> out;
  for_each_hom(s, t, [&](const TreeMorphism& f) { out.push_back(f); });
  return out;
}
inline std::vector<TreeMorphism> hom(const Tree& s, const Tree& t) { return hom(make_ref(s), make_ref(t)); }

inline std::vector<TreeMorphism> automorphisms(const TreeRef& t) {
  std::vector<TreeMorphism> out;
  for_each_hom(t, t, [&](const TreeMorphism& f) {
    if (is_injective(f)) out.push_back(f);
  });
  return out;
}

// ---------------------------------------------------------------- elementary morphisms

// ∂_e: the tree with inner edge e contracted, included into t.
inline TreeMorphism inner_face(const TreeRef& t, int e) {
  if (!t->is_inner(e)) throw Error("edge '" + t->name(e) + "' is not inner");
  int p = t->parent(e);
  Tree::VertexList vs;
  for (int v : t->vertex_edges()) {
    if (v == e) continue;
    std::vector<std::string> in;
    for (int k : t->kids(v)) {
      if (v == p && k == e) {
        for (int kk : t->kids(e)) in.push_back(t->name(kk));
      } else {
        in.push_back(t->name(k));
      }
    }
    vs.push_back({t->name(v), in});
  }
  auto s = make_ref(Tree::from_vertices(t->name(t->root()), vs));
  return morphism_by_names(s, t, {});
}

inline bool is_external_vertex(const Tree& t, int v) {
  if (!t.has_vertex(v)) return false;
  if (t.num_vertices() == 1) return true;
  int inner = 0;
  for (int k : t.kids(v)) inner += t.has_vertex(k) ? 1 : 0;
  if (v == t.root()) return inner == 1;
  return inner == 0;
}

// Faces obtained by erasing the external vertex whose output is v. For a tree
// with a single vertex these are the inclusions of η at each edge.
inline std::vector<TreeMorphism> external_faces(const TreeRef& t, int v) {
  if (!is_external_vertex(*t, v)) throw Error("vertex at '" + t->name(v) + "' is not external");
  std::vector<TreeMorphism> out;
  if (t->num_vertices() == 1) {
    for (int x = 0; x < static_cast<int>(t->size()); ++x) {
      auto s = make_ref(Tree::eta(t->name(x)));
      out.push_back(morphism_by_names(s, t, {}));
    }
    return out;
  }
  Tree::VertexList vs;
  std::string root = t->name(t->root());
  if (v == t->root()) {
    for (int k : t->kids(v))
      if (t->has_vertex(k)) root = t->name(k);
  }
  for (int w : t->vertex_edges())
    if (w != v) vs.push_back({t->name(w), {}});
  for (auto& [o, in] : vs)
    for (int k : t->kids(t->edge(o))) in.push_back(t->name(k));
  auto s = make_ref(Tree::from_vertices(root, vs));
  out.push_back(morphism_by_names(s, t, {}));
  return out;
}

inline std::vector<TreeMorphism> external_faces(const TreeRef& t) {
  std::vector<TreeMorphism> out;
  for (int v : t->vertex_edges())
    if (is_external_vertex(*t, v))
      for (auto& f : external_faces(t, v)) out.push_back(f);
  return out;
}

struct Face {
  TreeMorphism map;
  bool inner;
  int edge;  // contracted edge (inner) or erased vertex's output edge (external)
};

inline std::vector<Face> elementary_faces(const TreeRef& t) {
  std::vector<Face> out;
  for (int e : t->inner_edges()) out.push_back({inner_face(t, e), true, e});
  for (int v : t->vertex_edges())
    if (is_external_vertex(*t, v))
      for (auto& f : external_faces(t, v)) out.push_back({f, false, v});
  return out;
}

// σ_e: the tree with a unary vertex inserted in the middle of e, mapped onto t.
inline TreeMorphism degeneracy(const TreeRef& t, int e) {
  std::set<std::string> used(t->names().begin(), t->names().end());
  std::string up = detail::fresh_name(used, t->name(e) + "_s");
  Tree::VertexList vs;
  for (int v : t->vertex_edges()) {
    std::vector<std::string> in;
    for (int k : t->kids(v)) in.push_back(t->name(k));
    vs.push_back({v == e ? up : t->name(v), in});
  }
  vs.push_back({t->name(e), {up}});
  auto s = make_ref(Tree::from_vertices(t->name(t->root()), vs));
  return morphism_by_names(s, t, {{up, t->name(e)}});
}

// ---------------------------------------------------------------- faces as edge subsets

// The face of t with the given edges and leaves, as an inclusion carrying t's
// edge names. The edge set alone is ambiguous when stumps are around (r[a] and
// r[a[]] both sit on {r, a} inside r[a[]]), hence the explicit leaves.
inline TreeMorphism face_of(const TreeRef& t, const std::vector<int>& edges, std::vector<int> leaves) {
  std::set<int> keep(edges.begin(), edges.end());
  if (keep.empty()) throw Error("empty edge set");
  int root = -1;
  for (int e : keep) {
    int p = t->parent(e);
    while (p >= 0 && !keep.count(p)) p = t->parent(p);
    if (p < 0) {
      if (root >= 0) throw Error("edge set has two roots");
      root = e;
    }
  }
  std::sort(leaves.begin(), leaves.end());
  if (!spans(*t, root, leaves)) throw Error("edge set is not a face");
  Subtree u = subtree(*t, root, leaves);
  TreeRef cur = make_ref(u.tree);
  for (const auto& n : u.tree.names()) {
    if (keep.count(t->edge(n))) continue;
    int e = cur->edge(n);
    if (!cur->is_inner(e)) throw Error("edge set is not a face");
    cur = inner_face(cur, e).src;
  }
  for (int e : keep)
    if (!cur->has_edge(t->name(e))) throw Error("edge set is not a face");
  return morphism_by_names(cur, t, {});
}

// The image face of an injective morphism.
inline TreeMorphism image_face(const TreeMorphism& f) {
  std::vector<int> leaves;
  for (int l : f.src->leaves()) leaves.push_back(f.map[l]);
  return face_of(f.tgt, f.map, leaves);
}

// ---------------------------------------------------------------- factorization

struct Factorization {
  std::vector<TreeMorphism> degeneracies;  // applied first, in order
  TreeMorphism iso;
  std::vector<TreeMorphism> faces;  // faces[0] lands in the target; faces.back() receives iso

  TreeMorphism recompose() const {
    TreeMorphism g = iso;
    for (auto it = degeneracies.rbegin(); it != degeneracies.rend(); ++it) g = compose(g, *it);
    for (auto it = faces.rbegin(); it != faces.rend(); ++it) g = compose(*it, g);
    return g;
  }
};

inline Factorization factorize(const TreeMorphism& f) {
  if (!is_valid(f)) throw Error("not a valid tree morphism");
  Factorization out;
  TreeMorphism cur = f;
  // collapse unary vertices sent to identities
  while (true) {
    const Tree& s = *cur.src;
    int hit = -1;
    for (int w : s.vertex_edges())
      if (s.kids(w).size() == 1 && cur.map[s.kids(w)[0]] == cur.map[w]) hit = w;
    if (hit < 0) break;
    int c = s.kids(hit)[0];
    Tree::VertexList vs;
    for (int v : s.vertex_edges()) {
      if (v == hit) continue;
      std::vector<std::string> in;
      for (int k : s.kids(v)) in.push_back(s.name(k));
      vs.push_back({v == c ? s.name(hit) : s.name(v), in});
    }
    auto s0 = make_ref(Tree::from_vertices(s.name(s.root()), vs));
    TreeMorphism sigma = morphism_by_names(cur.src, s0, {{s.name(c), s.name(hit)}});
    TreeMorphism next{s0, cur.tgt, std::vector<int>(s0->size())};
    for (int e = 0; e < static_cast<int>(s0->size()); ++e) next.map[e] = cur.map[s.edge(s0->name(e))];
    out.degeneracies.push_back(sigma);
    cur = next;
  }
  if (!is_injective(cur)) throw Error("factorization left a non-injective part");
  // external faces down to the spanned subtree, then inner faces
  std::set<int> img(cur.map.begin(), cur.map.end());
  TreeRef amb = cur.tgt;
  std::string want_root = amb->name(cur.map[cur.src->root()]);
  std::vector<std::string> want_leaves;
  for (int l : cur.src->leaves()) want_leaves.push_back(amb->name(cur.map[l]));
  auto contains_want = [&](const Tree& t) {
    if (!t.has_edge(want_root)) return false;
    std::vector<int> ls;
    for (auto& n : want_leaves) {
      if (!t.has_edge(n)) return false;
      ls.push_back(t.edge(n));
    }
    std::sort(ls.begin(), ls.end());
    return spans(t, t.edge(want_root), ls);
  };
  TreeRef at = amb;
  while (true) {
    bool moved = false;
    for (auto& fc : external_faces(at)) {
      if (contains_want(*fc.src) && fc.src->num_vertices() < at->num_vertices()) {
        out.faces.push_back(fc);
        at = fc.src;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  while (true) {
    bool moved = false;
    for (int e : at->inner_edges()) {
      if (img.count(amb->edge(at->name(e)))) continue;
      auto fc = inner_face(at, e);
      out.faces.push_back(fc);
      at = fc.src;
      moved = true;
      break;
    }
    if (!moved) break;
  }
  out.iso = TreeMorphism{cur.src, at, std::vector<int>(cur.src->size())};
  for (int e = 0; e < static_cast<int>(cur.src->size()); ++e) out.iso.map[e] = at->edge(amb->name(cur.map[e]));
  if (!is_iso(out.iso)) throw Error("factorization did not end in an isomorphism");
  return out;
}

}  // namespace dendro
