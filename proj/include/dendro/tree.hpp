#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dendro {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rooted non-planar tree with named edges. Edges are indexed in preorder with
// siblings sorted by name, so two trees with the same named structure have the
// same layout and compare equal member-wise.
class Tree {
 public:
  using VertexList = std::vector<std::pair<std::string, std::vector<std::string>>>;

  Tree() : Tree(eta()) {}

  static Tree eta(const std::string& name = "e") { return from_vertices(name, {}); }

  static Tree corolla(int n, const std::string& root = "r") {
    std::vector<std::string> in;
    for (int i = 1; i <= n; ++i) in.push_back("e" + std::to_string(i));
    return from_vertices(root, {{root, in}});
  }

  // [n]: edges "0".."n", root "n", vertex i has input i-1 and output i.
  static Tree linear(int n) {
    VertexList vs;
    for (int i = 1; i <= n; ++i) vs.push_back({std::to_string(i), {std::to_string(i - 1)}});
    return from_vertices(std::to_string(n), vs);
  }

  static Tree from_vertices(const std::string& root, const VertexList& vertices) {
    std::map<std::string, std::vector<std::string>> up;
    std::map<std::string, std::string> below;
    std::set<std::string> all{root};
    for (const auto& [out, in] : vertices) {
      if (!valid_name(out)) throw Error("invalid edge name '" + out + "'");
      if (up.count(out)) throw Error("edge '" + out + "' is the output of two vertices");
      up[out] = in;
      all.insert(out);
      for (const auto& e : in) {
        if (!valid_name(e)) throw Error("invalid edge name '" + e + "'");
        if (below.count(e)) throw Error("duplicate edge name '" + e + "'");
        below[e] = out;
        all.insert(e);
      }
    }
    if (below.count(root)) throw Error("root '" + root + "' is an input edge");
    Tree t{Raw{}};
    t.build(root, up);
    if (t.size() != all.size()) throw Error("edges not connected to the root (cycle or forest)");
    return t;
  }

  std::size_t size() const { return name_.size(); }
  int root() const { return 0; }
  const std::string& name(int e) const { return name_.at(e); }
  const std::vector<std::string>& names() const { return name_; }
  int parent(int e) const { return parent_[e]; }
  const std::vector<int>& kids(int e) const { return kids_[e]; }
  bool has_vertex(int e) const { return has_vertex_[e] != 0; }
  bool is_leaf(int e) const { return !has_vertex(e); }
  bool is_stump(int e) const { return has_vertex(e) && kids_[e].empty(); }
  bool is_inner(int e) const { return has_vertex(e) && parent_[e] >= 0; }

  int edge(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw Error("unknown edge '" + n + "'");
    return it->second;
  }
  bool has_edge(const std::string& n) const { return index_.count(n) != 0; }

  int num_vertices() const {
    return static_cast<int>(std::count(has_vertex_.begin(), has_vertex_.end(), 1));
  }
  int max_arity() const {
    std::size_t m = 0;
    for (const auto& k : kids_) m = std::max(m, k.size());
    return static_cast<int>(m);
  }
  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(size()); ++e)
      if (is_leaf(e)) out.push_back(e);
    return out;
  }
  std::vector<int> vertex_edges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(size()); ++e)
      if (has_vertex(e)) out.push_back(e);
    return out;
  }
  std::vector<int> inner_edges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(size()); ++e)
      if (is_inner(e)) out.push_back(e);
    return out;
  }
  bool is_linear() const {
    for (const auto& k : kids_)
      if (k.size() > 1) return false;
    return true;
  }

  // e <= f iff the path from e down to the root passes through f.
  bool leq(int e, int f) const {
    for (int x = e; x >= 0; x = parent_[x])
      if (x == f) return true;
    return false;
  }
  bool comparable(int e, int f) const { return leq(e, f) || leq(f, e); }

  VertexList vertex_list() const {
    VertexList vs;
    for (int e : vertex_edges()) {
      std::vector<std::string> in;
      for (int k : kids_[e]) in.push_back(name_[k]);
      vs.push_back({name_[e], in});
    }
    return vs;
  }

  std::string str() const { return str_from(0); }

  // Copy with edges renamed; names not in the map are kept.
  Tree renamed(const std::map<std::string, std::string>& m) const {
    auto nm = [&](const std::string& s) {
      auto it = m.find(s);
      return it == m.end() ? s : it->second;
    };
    VertexList vs;
    for (auto& [o, in] : vertex_list()) {
      std::vector<std::string> in2;
      for (auto& i : in) in2.push_back(nm(i));
      vs.push_back({nm(o), in2});
    }
    return from_vertices(nm(name_[0]), vs);
  }

  // Edges of the maximal subtree above e (e included).
  std::vector<int> above(int e) const {
    std::vector<int> out{e};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (int k : kids_[out[i]]) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Tree& o) const {
    return name_ == o.name_ && kids_ == o.kids_ && has_vertex_ == o.has_vertex_;
  }

  static bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

 private:
  struct Raw {};
  explicit Tree(Raw) {}

  std::vector<std::string> name_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> kids_;
  std::vector<char> has_vertex_;
  std::unordered_map<std::string, int> index_;

  void build(const std::string& root, const std::map<std::string, std::vector<std::string>>& up) {
    name_.clear();
    parent_.clear();
    kids_.clear();
    has_vertex_.clear();
    index_.clear();
    std::set<std::string> seen;
    std::function<int(const std::string&, int)> visit = [&](const std::string& n, int par) {
      if (!seen.insert(n).second) throw Error("edge '" + n + "' reached twice");
      int id = static_cast<int>(name_.size());
      name_.push_back(n);
      parent_.push_back(par);
      kids_.emplace_back();
      auto it = up.find(n);
      has_vertex_.push_back(it != up.end());
      index_[n] = id;
      if (it != up.end()) {
        auto in = it->second;
        std::sort(in.begin(), in.end());
        for (const auto& c : in) {
          int k = visit(c, id);
          kids_[id].push_back(k);
        }
      }
      return id;
    };
    visit(root, -1);
  }

  std::string str_from(int e) const {
    std::string s = name_[e];
    if (!has_vertex(e)) return s;
    s += "[";
    for (std::size_t i = 0; i < kids_[e].size(); ++i) {
      if (i) s += ",";
      s += str_from(kids_[e][i]);
    }
    return s + "]";
  }
};

using TreeRef = std::shared_ptr<const Tree>;
inline TreeRef make_ref(Tree t) { return std::make_shared<const Tree>(std::move(t)); }

// ---------------------------------------------------------------- parsing

namespace detail {
struct TreeParser {
  const std::string& s;
  std::size_t pos = 0;
  Tree::VertexList vs;
  std::set<std::string> names;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("syntax error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  std::string edge() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (b == pos) fail("expected edge name");
    std::string n = s.substr(b, pos - b);
    if (!names.insert(n).second) {
      pos = b;
      throw Error("duplicate edge name '" + n + "' at position " + std::to_string(b));
    }
    return n;
  }
  std::string tree() {
    std::string e = edge();
    skip();
    if (pos < s.size() && s[pos] == '[') {
      ++pos;
      skip();
      std::vector<std::string> in;
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
      } else {
        while (true) {
          in.push_back(tree());
          skip();
          if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < s.size() && s[pos] == ']') {
            ++pos;
            break;
          }
          fail("expected ',' or ']'");
        }
      }
      vs.push_back({e, in});
    }
    return e;
  }
};
}  // namespace detail

inline Tree parse_tree(const std::string& text) {
  detail::TreeParser p{text};
  std::string root = p.tree();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return Tree::from_vertices(root, p.vs);
}

inline std::string print_tree(const Tree& t) { return t.str(); }

// ---------------------------------------------------------------- subtrees

// Whether a subtree of t has root `root` and leaf set exactly `leaves`.
inline bool spans(const Tree& t, int root, std::span<const int> leaves) {
  std::vector<char> mark(t.size(), 0);
  for (int l : leaves) {
    if (l < 0 || l >= static_cast<int>(t.size()) || mark[l]) return false;
    mark[l] = 1;
  }
  std::size_t hit = 0;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (mark[e]) {
      ++hit;
      continue;
    }
    if (!t.has_vertex(e)) return false;
    for (int k : t.kids(e)) stack.push_back(k);
  }
  return hit == leaves.size();
}

// All leaf sets (sorted) of subtrees with root e, for every e.
inline std::vector<std::vector<std::vector<int>>> leafsets(const Tree& t) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<std::vector<int>>> out(n);
  for (int e = n - 1; e >= 0; --e) {  // preorder: kids have larger indices
    out[e].push_back({e});
    if (!t.has_vertex(e)) continue;
    std::vector<std::vector<int>> acc{{}};
    for (int k : t.kids(e)) {
      std::vector<std::vector<int>> next;
      for (const auto& a : acc)
        for (const auto& b : out[k]) {
          auto c = a;
          c.insert(c.end(), b.begin(), b.end());
          next.push_back(std::move(c));
        }
      acc = std::move(next);
    }
    for (auto& a : acc) {
      std::sort(a.begin(), a.end());
      out[e].push_back(std::move(a));
    }
    std::sort(out[e].begin(), out[e].end());
  }
  return out;
}

struct Subtree {
  Tree tree;                // edges keep their names from the ambient tree
  std::vector<int> embed;   // subtree edge index -> ambient edge index
  int root = 0;             // ambient root edge
  std::vector<int> leaves;  // ambient leaf edges, sorted
};

// The subtree of t with the given root and leaf set; throws if there is none.
inline Subtree subtree(const Tree& t, int root, std::vector<int> leaves) {
  std::sort(leaves.begin(), leaves.end());
  if (!spans(t, root, leaves)) throw Error("no subtree with that root and leaf set");
  std::set<int> cut(leaves.begin(), leaves.end());
  Tree::VertexList vs;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (cut.count(e)) continue;
    std::vector<std::string> in;
    for (int k : t.kids(e)) {
      in.push_back(t.name(k));
      stack.push_back(k);
    }
    vs.push_back({t.name(e), in});
  }
  Subtree s{Tree::from_vertices(t.name(root), vs), {}, root, leaves};
  for (const auto& n : s.tree.names()) s.embed.push_back(t.edge(n));
  return s;
}

// Subtrees by successive pruning of external vertices, starting from t itself.
inline std::vector<Subtree> enumerate_subtrees(const Tree& t) {
  // a subtree is keyed by (root, sorted leaves); its vertex set is determined.
  std::set<std::pair<int, std::vector<int>>> seen;
  std::vector<std::pair<int, std::vector<int>>> order;
  auto push = [&](int r, std::vector<int> l) {
    std::sort(l.begin(), l.end());
    if (seen.insert({r, l}).second) order.push_back({r, l});
  };
  push(t.root(), t.leaves());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [r, l] = order[i];
    std::set<int> cut(l.begin(), l.end());
    std::vector<int> verts;  // vertex output edges inside this subtree
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      if (cut.count(e)) continue;
      verts.push_back(e);
      for (int k : t.kids(e)) stack.push_back(k);
    }
    if (verts.empty()) continue;
    auto inner_kids = [&](int v) {
      std::vector<int> ik;
      for (int k : t.kids(v))
        if (!cut.count(k)) ik.push_back(k);
      return ik;
    };
    if (verts.size() == 1) {
      int v = verts[0];
      push(v, {v});
      for (int k : t.kids(v)) push(k, {k});
      continue;
    }
    for (int v : verts) {
      auto ik = inner_kids(v);
      if (v != r && ik.empty()) {
        // top vertex: its output becomes a leaf
        auto l2 = l;
        std::erase_if(l2, [&](int x) { return t.parent(x) == v; });
        l2.push_back(v);
        push(r, l2);
      } else if (v == r && ik.size() == 1) {
        auto l2 = l;
        std::erase_if(l2, [&](int x) { return t.parent(x) == v; });
        push(ik[0], l2);
      }
    }
  }
  std::vector<Subtree> out;
  for (auto& [r, l] : order) out.push_back(subtree(t, r, l));
  return out;
}

// ---------------------------------------------------------------- grafting

namespace detail {
inline std::string fresh_name(const std::set<std::string>& used, const std::string& base) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string c = base + "_" + std::to_string(i);
    if (!used.count(c)) return c;
  }
}
}  // namespace detail

struct Graft {
  Tree tree;
  std::map<std::string, std::string> r_names;  // edge of R -> edge of the result
};

// S with R grafted onto the leaf `leaf`. Edges of R clashing with S are renamed.
inline Graft graft_named(const Tree& s, const std::string& leaf, const Tree& r) {
  int l = s.edge(leaf);
  if (!s.is_leaf(l)) throw Error("'" + leaf + "' is not a leaf");
  std::set<std::string> used(s.names().begin(), s.names().end());
  std::map<std::string, std::string> ren;
  ren[r.name(r.root())] = leaf;
  for (const auto& n : r.names()) {
    if (ren.count(n)) continue;
    std::string f = detail::fresh_name(used, n);
    used.insert(f);
    ren[n] = f;
  }
  Tree::VertexList vs = s.vertex_list();
  for (auto& [o, in] : r.vertex_list()) {
    std::vector<std::string> in2;
    for (auto& i : in) in2.push_back(ren[i]);
    vs.push_back({ren[o], in2});
  }
  return {Tree::from_vertices(s.name(s.root()), vs), ren};
}

inline Tree graft(const Tree& s, const std::string& leaf, const Tree& r) {
  return graft_named(s, leaf, r).tree;
}

// ---------------------------------------------------------------- canonical form

struct CanonicalForm {
  std::string code;    // exact structural code; equal iff isomorphic
  std::uint64_t hash;  // FNV-1a of code
  std::map<std::string, int> relabeling;  // edge name -> canonical position
};

namespace detail {
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}
inline std::string code_of(const Tree& t, int e, std::vector<std::string>& memo) {
  if (!memo[e].empty()) return memo[e];
  std::string c;
  if (!t.has_vertex(e)) {
    c = "|";
  } else {
    std::vector<std::string> ks;
    for (int k : t.kids(e)) ks.push_back(code_of(t, k, memo));
    std::sort(ks.begin(), ks.end());
    c = "(";
    for (auto& k : ks) c += k;
    c += ")";
  }
  return memo[e] = c;
}
}  // namespace detail

inline std::string tree_code(const Tree& t) {
  std::vector<std::string> memo(t.size());
  return detail::code_of(t, t.root(), memo);
}

inline CanonicalForm canonical_form(const Tree& t) {
  std::vector<std::string> memo(t.size());
  CanonicalForm cf;
  cf.code = detail::code_of(t, t.root(), memo);
  cf.hash = detail::fnv1a(cf.code);
  int pos = 0;
  std::function<void(int)> walk = [&](int e) {
    cf.relabeling[t.name(e)] = pos++;
    auto ks = t.kids(e);
    // ties broken by (length, name) so that canonical_tree is idempotent
    std::sort(ks.begin(), ks.end(), [&](int a, int b) {
      if (memo[a] != memo[b]) return memo[a] < memo[b];
      const auto &x = t.name(a), &y = t.name(b);
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    for (int k : ks) walk(k);
  };
  walk(t.root());
  return cf;
}

inline bool is_isomorphic(const Tree& a, const Tree& b) { return tree_code(a) == tree_code(b); }

// The representative of t's isomorphism class: edges renamed by canonical position.
inline Tree canonical_tree(const Tree& t) {
  auto cf = canonical_form(t);
  std::map<std::string, std::string> m;
  for (auto& [n, p] : cf.relabeling) m[n] = "t" + std::to_string(p);
  return t.renamed(m);
}

// ---------------------------------------------------------------- join with eta

struct Join {
  Tree tree;
  std::vector<int> iota;  // edge of T -> edge of T*eta
  int gamma;              // the new root edge
};

inline Join join_eta(const Tree& t) {
  std::set<std::string> used(t.names().begin(), t.names().end());
  std::string nr = detail::fresh_name(used, t.name(t.root()) + "_j");
  auto vs = t.vertex_list();
  vs.push_back({nr, {t.name(t.root())}});
  Join j{Tree::from_vertices(nr, vs), {}, 0};
  for (const auto& n : t.names()) j.iota.push_back(j.tree.edge(n));
  j.gamma = j.tree.edge(nr);
  return j;
}

// ---------------------------------------------------------------- enumeration

// Isomorphism classes of trees with at most max_vertices vertices and vertex
// arity at most max_arity, as canonical representatives sorted by size.
inline std::vector<Tree> enumerate_trees(int max_vertices, int max_arity, bool stumps = true) {
  // shapes[v] = codes with exactly v vertices
  std::vector<std::vector<std::string>> shapes(max_vertices + 1);
  shapes[0] = {"|"};
  for (int v = 1; v <= max_vertices; ++v) {
    std::set<std::string> got;
    // children multisets: nondecreasing sequences of (vcount, index)
    std::vector<std::pair<int, int>> pick;
    std::function<void(int, int, int)> rec = [&](int budget, int minv, int mini) {
      int ar = static_cast<int>(pick.size());
      if (budget == 0 && (ar > 0 || stumps)) {
        std::vector<std::string> ks;
        for (auto [a, b] : pick) ks.push_back(shapes[a][b]);
        std::sort(ks.begin(), ks.end());
        std::string c = "(";
        for (auto& k : ks) c += k;
        got.insert(c + ")");
      }
      if (ar == max_arity) return;
      for (int a = minv; a <= budget; ++a)
        for (int b = (a == minv ? mini : 0); b < static_cast<int>(shapes[a].size()); ++b) {
          pick.push_back({a, b});
          rec(budget - a, a, b);
          pick.pop_back();
        }
    };
    rec(v - 1, 0, 0);
    shapes[v].assign(got.begin(), got.end());
  }
  std::vector<Tree> out;
  for (int v = 0; v <= max_vertices; ++v)
    for (const auto& c : shapes[v]) {
      // decode
      std::size_t pos = 0;
      int counter = 0;
      Tree::VertexList vs;
      std::function<std::string()> dec = [&]() {
        std::string nm = "t" + std::to_string(counter++);
        if (c[pos] == '|') {
          ++pos;
          return nm;
        }
        ++pos;  // '('
        std::vector<std::string> in;
        while (c[pos] != ')') in.push_back(dec());
        ++pos;
        vs.push_back({nm, in});
        return nm;
      };
      std::string r = dec();
      out.push_back(canonical_tree(Tree::from_vertices(r, vs)));
    }
  return out;
}

inline std::vector<Tree> enumerate_trees_by_edges(int max_edges, bool stumps = true) {
  std::vector<Tree> out;
  for (auto& t : enumerate_trees(max_edges - 1, max_edges - 1, stumps))
    if (static_cast<int>(t.size()) <= max_edges) out.push_back(t);
  return out;
}

}  // namespace dendro
