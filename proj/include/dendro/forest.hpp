#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/morphism.hpp"
#include "dendro/tree.hpp"

namespace dendro {

struct Forest {
  std::vector<TreeRef> trees;

  std::size_t size() const { return trees.size(); }
  std::size_t num_edges() const {
    std::size_t n = 0;
    for (auto& t : trees) n += t->size();
    return n;
  }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < trees.size(); ++i) s += (i ? " + " : "") + trees[i]->str();
    return s;
  }
  // Canonical form up to reordering constituents.
  std::string code() const {
    std::vector<std::string> cs;
    for (auto& t : trees) cs.push_back(tree_code(*t));
    std::sort(cs.begin(), cs.end());
    std::string s;
    for (auto& c : cs) s += c + "+";
    return s;
  }
  bool operator==(const Forest& o) const {
    if (trees.size() != o.trees.size()) return false;
    for (std::size_t i = 0; i < trees.size(); ++i)
      if (!(trees[i] == o.trees[i] || *trees[i] == *o.trees[i])) return false;
    return true;
  }
};

inline Forest forest_of(const TreeRef& t) { return Forest{{t}}; }

// "a + r[x,y]"
inline Forest parse_forest(const std::string& text) {
  Forest f;
  std::size_t start = 0;
  while (true) {
    std::size_t p = text.find('+', start);
    std::string part = text.substr(start, p == std::string::npos ? std::string::npos : p - start);
    f.trees.push_back(make_ref(parse_tree(part)));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return f;
}

inline Forest direct_sum(const Forest& a, const Forest& b) {
  Forest f = a;
  f.trees.insert(f.trees.end(), b.trees.begin(), b.trees.end());
  return f;
}

struct ForestMorphism {
  Forest src, tgt;
  std::vector<int> alpha;            // constituent of src -> constituent of tgt
  std::vector<TreeMorphism> maps;    // maps[i] : src.trees[i] -> tgt.trees[alpha[i]]

  bool operator==(const ForestMorphism& o) const {
    return src == o.src && tgt == o.tgt && alpha == o.alpha && maps == o.maps;
  }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < maps.size(); ++i) s += (i ? " + " : "") + std::to_string(alpha[i]) + maps[i].str();
    return s;
  }
};

inline ForestMorphism forest_morphism(const TreeMorphism& f) { return {forest_of(f.src), forest_of(f.tgt), {0}, {f}}; }

inline bool is_valid(const ForestMorphism& f) {
  if (f.alpha.size() != f.src.size() || f.maps.size() != f.src.size()) return false;
  for (std::size_t i = 0; i < f.maps.size(); ++i) {
    if (f.alpha[i] < 0 || f.alpha[i] >= static_cast<int>(f.tgt.size())) return false;
    if (!(*f.maps[i].src == *f.src.trees[i]) || !(*f.maps[i].tgt == *f.tgt.trees[f.alpha[i]])) return false;
    if (!is_valid(f.maps[i])) return false;
  }
  return true;
}

inline ForestMorphism compose(const ForestMorphism& g, const ForestMorphism& f) {
  if (!(f.tgt == g.src)) throw Error("forest morphisms are not composable");
  ForestMorphism h{f.src, g.tgt, {}, {}};
  for (std::size_t i = 0; i < f.maps.size(); ++i) {
    h.alpha.push_back(g.alpha[f.alpha[i]]);
    h.maps.push_back(compose(g.maps[f.alpha[i]], f.maps[i]));
  }
  return h;
}

inline ForestMorphism direct_sum(const ForestMorphism& f, const ForestMorphism& g) {
  ForestMorphism h{direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), f.alpha, f.maps};
  for (std::size_t i = 0; i < g.maps.size(); ++i) {
    h.alpha.push_back(g.alpha[i] + static_cast<int>(f.tgt.size()));
    h.maps.push_back(g.maps[i]);
  }
  return h;
}

inline std::vector<int> root_images(const ForestMorphism& f, int target) {
  std::vector<int> out;
  for (std::size_t i = 0; i < f.maps.size(); ++i)
    if (f.alpha[i] == target) out.push_back(f.maps[i].map[f.maps[i].src->root()]);
  return out;
}

inline bool is_independent(const ForestMorphism& f) {
  for (std::size_t j = 0; j < f.tgt.size(); ++j) {
    auto r = root_images(f, static_cast<int>(j));
    const Tree& t = *f.tgt.trees[j];
    for (std::size_t a = 0; a < r.size(); ++a)
      for (std::size_t b = a + 1; b < r.size(); ++b)
        if (t.comparable(r[a], r[b])) return false;
  }
  return true;
}

// Maximal monotonic paths, from each minimal element (leaf or stump output) to the root.
inline std::vector<std::vector<int>> maximal_paths(const Tree& t) {
  std::vector<std::vector<int>> out;
  for (int e = 0; e < static_cast<int>(t.size()); ++e) {
    if (t.has_vertex(e) && !t.kids(e).empty()) continue;
    std::vector<int> p;
    for (int x = e; x >= 0; x = t.parent(x)) p.push_back(x);
    out.push_back(std::move(p));
  }
  return out;
}

// Path criterion: every maximal path of every target constituent meets a root image.
inline bool is_wide(const ForestMorphism& f) {
  for (std::size_t j = 0; j < f.tgt.size(); ++j) {
    auto r = root_images(f, static_cast<int>(j));
    for (auto& p : maximal_paths(*f.tgt.trees[j])) {
      bool hit = false;
      for (int x : p) hit = hit || std::find(r.begin(), r.end(), x) != r.end();
      if (!hit) return false;
    }
  }
  return true;
}

// Operation criterion: the root images are the leaves of a subtree at the root
// of each target constituent.
inline bool is_wide_by_operations(const ForestMorphism& f) {
  for (std::size_t j = 0; j < f.tgt.size(); ++j) {
    auto r = root_images(f, static_cast<int>(j));
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) return false;
    if (!spans(*f.tgt.trees[j], f.tgt.trees[j]->root(), r)) return false;
  }
  return true;
}

inline bool wide_lemma_check(const ForestMorphism& f) {
  if (f.tgt.size() != 1) throw Error("target must be a single tree");
  if (!is_independent(f)) throw Error("morphism is not independent");
  return is_wide_by_operations(f);
}

// ---------------------------------------------------------------- generators

struct RootFace {
  TreeRef tree;         // C_n with the constituents grafted on its leaves
  ForestMorphism incl;  // F -> tree
};

inline RootFace forest_root_face(const Forest& f) {
  if (f.trees.empty()) throw Error("empty forest");
  std::map<std::string, int> seen;
  for (auto& t : f.trees)
    for (auto& n : t->names()) ++seen[n];
  std::vector<std::map<std::string, std::string>> ren(f.size());
  std::set<std::string> used;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto& n : f.trees[i]->names()) {
      std::string m = seen[n] > 1 ? detail::fresh_name(used, n + "_" + std::to_string(i)) : n;
      used.insert(m);
      ren[i][n] = m;
    }
  std::string root = detail::fresh_name(used, "root");
  Tree::VertexList vs;
  std::vector<std::string> top;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Tree& t = *f.trees[i];
    top.push_back(ren[i][t.name(t.root())]);
    for (auto& [o, in] : t.vertex_list()) {
      std::vector<std::string> nin;
      for (auto& x : in) nin.push_back(ren[i][x]);
      vs.push_back({ren[i][o], nin});
    }
  }
  vs.push_back({root, top});
  RootFace rf{make_ref(Tree::from_vertices(root, vs)), {}};
  rf.incl.src = f;
  rf.incl.tgt = forest_of(rf.tree);
  for (std::size_t i = 0; i < f.size(); ++i) {
    rf.incl.alpha.push_back(0);
    rf.incl.maps.push_back(morphism_by_names(f.trees[i], rf.tree, ren[i]));
  }
  return rf;
}

// One target constituent's share of a decomposition: either a single
// root-preserving map, or a forest root face followed by a root-preserving map.
struct DecompositionPart {
  int target;
  std::vector<int> sources;  // source constituents, in order
  std::optional<RootFace> face;
  TreeMorphism root_preserving;
};

struct Decomposition {
  ForestMorphism original;
  std::vector<DecompositionPart> parts;

  ForestMorphism recompose() const {
    ForestMorphism h{original.src, original.tgt, std::vector<int>(original.src.size(), -1),
                     std::vector<TreeMorphism>(original.src.size())};
    for (auto& p : parts)
      for (std::size_t k = 0; k < p.sources.size(); ++k) {
        int i = p.sources[k];
        h.alpha[i] = p.target;
        h.maps[i] = p.face ? compose(p.root_preserving, p.face->incl.maps[k]) : p.root_preserving;
      }
    return h;
  }
  std::size_t num_generators() const {
    std::size_t n = 0;
    for (auto& p : parts) n += p.face && !is_identity(p.root_preserving.map) ? 2 : 1;
    return n;
  }
};

inline Decomposition decompose_wide_independent(const ForestMorphism& f) {
  if (!is_valid(f)) throw Error("not a valid forest morphism");
  if (!is_independent(f)) throw Error("morphism is not independent");
  if (!is_wide_by_operations(f)) throw Error("morphism is not wide");
  Decomposition d{f, {}};
  for (int j = 0; j < static_cast<int>(f.tgt.size()); ++j) {
    DecompositionPart part{j, {}, std::nullopt, {}};
    for (int i = 0; i < static_cast<int>(f.src.size()); ++i)
      if (f.alpha[i] == j) part.sources.push_back(i);
    const TreeRef& s = f.tgt.trees[j];
    if (part.sources.size() == 1 && is_root_preserving(f.maps[part.sources[0]])) {
      part.root_preserving = f.maps[part.sources[0]];
    } else {
      Forest sub;
      for (int i : part.sources) sub.trees.push_back(f.src.trees[i]);
      RootFace rf = forest_root_face(sub);
      TreeMorphism g{rf.tree, s, std::vector<int>(rf.tree->size(), -1)};
      g.map[rf.tree->root()] = s->root();
      for (std::size_t k = 0; k < part.sources.size(); ++k) {
        const auto& inc = rf.incl.maps[k];
        const auto& fi = f.maps[part.sources[k]];
        for (std::size_t e = 0; e < inc.map.size(); ++e) g.map[inc.map[e]] = fi.map[e];
      }
      if (!is_valid(g) || !is_root_preserving(g)) throw Error("decomposition produced an invalid map");
      if (is_iso(g)) {
        // f_j is itself a root face, up to renaming
        for (auto& m : rf.incl.maps) m = compose(g, m);
        rf.tree = s;
        rf.incl.tgt = forest_of(s);
        g = identity_morphism(s);
      }
      part.face = std::move(rf);
      part.root_preserving = std::move(g);
    }
    d.parts.push_back(std::move(part));
  }
  return d;
}

// ---------------------------------------------------------------- enumeration

// Forests as nondecreasing lists of tree representatives, total edges <= max_edges.
inline std::vector<Forest> enumerate_forests(int max_edges, bool stumps = true) {
  std::vector<TreeRef> reps;
  for (auto& t : enumerate_trees_by_edges(max_edges, stumps)) reps.push_back(make_ref(t));
  std::vector<Forest> out;
  Forest cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (!cur.trees.empty()) out.push_back(cur);
    for (std::size_t k = from; k < reps.size(); ++k) {
      int n = static_cast<int>(reps[k]->size());
      if (n > left) continue;
      cur.trees.push_back(reps[k]);
      rec(k, left - n);
      cur.trees.pop_back();
    }
  };
  rec(0, max_edges);
  return out;
}

// Calls visit(f) for every independent morphism from src into the single tree t.
template <class Visit>
void for_each_independent_map(const Forest& src, const TreeRef& t, Visit&& visit) {
  std::vector<std::vector<TreeMorphism>> homs;
  for (auto& s : src.trees) homs.push_back(hom(s, t));
  ForestMorphism f{src, forest_of(t), std::vector<int>(src.size(), 0), std::vector<TreeMorphism>(src.size())};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == src.size()) {
      visit(static_cast<const ForestMorphism&>(f));
      return;
    }
    for (auto& g : homs[i]) {
      int r = g.map[g.src->root()];
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = !t->comparable(r, f.maps[k].map[f.maps[k].src->root()]);
      if (!ok) continue;
      f.maps[i] = g;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace dendro
