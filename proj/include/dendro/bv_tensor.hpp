#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dendro/dendroidal.hpp"
#include "dendro/operad.hpp"

namespace dendro {

// The permutation of an n×m grid read row-wise into column-wise order:
// σ(i·m + k) = k·n + i.
inline Perm sigma_nm(int n, int m) {
  Perm s(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k) s[i * m + k] = k * n + i;
  return s;
}

// A formal composite of generators p⊗y (PNode: op of P, Q-color y) and c⊗q
// (QNode: P-color c, op of Q). Holes carry their input label and color.
struct Term {
  enum Kind { Hole = 0, PNode = 1, QNode = 2 };
  Kind kind = Hole;
  int op = -1;
  int color = -1;  // Q-color (PNode), P-color (QNode), pair color (Hole)
  int label = -1;
  std::vector<Term> kids;

  static Term hole(int pair_color, int label) { return Term{Hole, -1, pair_color, label, {}}; }
  static Term pnode(int p, int y, std::vector<Term> kids) { return Term{PNode, p, y, -1, std::move(kids)}; }
  static Term qnode(int c, int q, std::vector<Term> kids) { return Term{QNode, q, c, -1, std::move(kids)}; }

  int size() const {
    int n = kind == Hole ? 0 : 1;
    for (auto& k : kids) n += k.size();
    return n;
  }
  int leaves() const {
    if (kind == Hole) return 1;
    int n = 0;
    for (auto& k : kids) n += k.leaves();
    return n;
  }
};

// P⊗Q on the product of the color sets, with operations computed as classes
// of words with at most word_bound generators and at most max_arity inputs.
class TensorOperad {
 public:
  using Op = int;  // a class, named by its smallest word
  struct Signature {
    std::vector<int> in;
    int out;
    auto operator<=>(const Signature&) const = default;
  };

  TensorOperad(FiniteOperad p, FiniteOperad q, int word_bound, int max_arity)
      : p_(std::move(p)), q_(std::move(q)), bound_(word_bound), max_arity_(max_arity) {
    p_max_ = max_op_arity(p_);
    q_max_ = max_op_arity(q_);
    generate();
    uf_ = ConstUF(static_cast<int>(words_.size()));
    apply_relations();
    index_classes();
  }

  const FiniteOperad& left() const { return p_; }
  const FiniteOperad& right() const { return q_; }
  int word_bound() const { return bound_; }
  int max_arity() const { return max_arity_; }

  int num_colors() const { return p_.num_colors() * q_.num_colors(); }
  int pair(int c, int y) const { return c * q_.num_colors() + y; }
  int p_color(int pc) const { return pc / q_.num_colors(); }
  int q_color(int pc) const { return pc % q_.num_colors(); }
  std::string color_name(int pc) const {
    return "(" + p_.color_name(p_color(pc)) + "," + q_.color_name(q_color(pc)) + ")";
  }

  std::size_t num_words() const { return words_.size(); }
  std::size_t num_classes() const { return class_sig_.size(); }
  const Term& word(int w) const { return words_.at(w); }
  bool frontier_touched(const Signature& s) const { return touched_.count(s) != 0; }
  bool any_frontier_touched() const { return !touched_.empty(); }
  const std::set<Signature>& touched() const { return touched_; }

  std::vector<int> classes(const Signature& s) const {
    auto it = by_sig_.find(s);
    return it == by_sig_.end() ? std::vector<int>{} : it->second;
  }
  const std::map<Signature, std::vector<int>>& signatures() const { return by_sig_; }

  // The class of an arbitrary term, or -1 when it is outside the bounds.
  int class_of(Term t) const {
    canonicalize(t);
    auto it = index_.find(encode(t));
    if (it == index_.end()) return -1;
    return uf_.find_const(it->second);
  }

  // A second pass of the relations; returns the number of new identifications.
  int apply_relations() {
    int merged = 0;
    for (int w = 0; w < static_cast<int>(words_.size()); ++w) merged += relate(w);
    return merged;
  }

  // OperadLike interface
  std::vector<int> inputs(int c) const { return class_sig_.at(c).in; }
  int output(int c) const { return class_sig_.at(c).out; }
  std::vector<int> ops(const std::vector<int>& in, int c) const { return classes({in, c}); }
  std::vector<int> ops_into(int c, int n) const {
    auto it = by_out_.find({c, n});
    return it == by_out_.end() ? std::vector<int>{} : it->second;
  }
  int unit(int c) const { return uf_.find_const(index_.at(encode(Term::hole(c, 0)))); }
  int compose(int a, int i, int b) const {
    Term ta = words_.at(a), tb = words_.at(b);
    int nb = tb.leaves();
    relabel(tb, [&](int l) { return l + i; });
    bool done = false;
    std::function<void(Term&)> go = [&](Term& t) {
      if (t.kind == Term::Hole) {
        if (t.label == i && !done) {
          t = tb;
          done = true;
        } else if (t.label > i) {
          t.label += nb - 1;
        }
        return;
      }
      for (auto& k : t.kids) go(k);
    };
    go(ta);
    int c = class_of(ta);
    if (c < 0) throw Error("composite exceeds the word bound");
    return c;
  }
  int act(int a, const Perm& s) const {
    Term t = words_.at(a);
    auto inv = perm_inverse(s);
    relabel(t, [&](int l) { return inv[l]; });
    return class_of(t);
  }
  std::string op_name(int c) const { return show(words_.at(c)); }

  std::string show(const Term& t) const {
    if (t.kind == Term::Hole) return "#" + std::to_string(t.label);
    std::string s = t.kind == Term::PNode ? p_.op_name(t.op) + "⊗" + q_.color_name(t.color)
                                          : p_.color_name(t.color) + "⊗" + q_.op_name(t.op);
    if (t.kids.empty()) return s;
    s += "(";
    for (std::size_t j = 0; j < t.kids.size(); ++j) s += (j ? "," : "") + show(t.kids[j]);
    return s + ")";
  }

  int out_color(const Term& t) const {
    switch (t.kind) {
      case Term::Hole: return t.color;
      case Term::PNode: return pair(p_.output(t.op), t.color);
      default: return pair(t.color, q_.output(t.op));
    }
  }
  int slot_color(const Term& t, int j) const {
    return t.kind == Term::PNode ? pair(p_.inputs(t.op)[j], t.color) : pair(t.color, q_.inputs(t.op)[j]);
  }

 private:
  static int max_op_arity(const FiniteOperad& o) {
    int m = 0;
    for (auto& d : o.op_data()) m = std::max(m, static_cast<int>(d.in.size()));
    return m;
  }

  static void relabel(Term& t, const std::function<int(int)>& f) {
    if (t.kind == Term::Hole) {
      t.label = f(t.label);
      return;
    }
    for (auto& k : t.kids) relabel(k, f);
  }

  static void encode_into(const Term& t, std::vector<int>& out) {
    out.push_back(t.kind);
    if (t.kind == Term::Hole) {
      out.push_back(t.label);
      out.push_back(t.color);
      return;
    }
    out.push_back(t.op);
    out.push_back(t.color);
    out.push_back(static_cast<int>(t.kids.size()));
    for (auto& k : t.kids) encode_into(k, out);
  }
  static std::vector<int> encode(const Term& t) {
    std::vector<int> v;
    encode_into(t, v);
    return v;
  }

  int act_node(const Term& t, const Perm& s) const { return t.kind == Term::PNode ? p_.act(t.op, s) : q_.act(t.op, s); }

  // Equivariance: reorder children by smallest label (constants last, by
  // encoding), acting on the generator accordingly; among equal constant
  // children pick the permutation giving the smallest generator.
  int canonicalize(Term& t) const {
    if (t.kind == Term::Hole) return t.label;
    int n = static_cast<int>(t.kids.size());
    std::vector<int> minl(n);
    std::vector<std::vector<int>> enc(n);
    int best = INT_MAX;
    for (int j = 0; j < n; ++j) {
      minl[j] = canonicalize(t.kids[j]);
      if (minl[j] == INT_MAX) enc[j] = encode(t.kids[j]);
      best = std::min(best, minl[j]);
    }
    Perm s = identity_perm(n);
    auto key_less = [&](int a, int b) {
      if (minl[a] != minl[b]) return minl[a] < minl[b];
      return enc[a] < enc[b];
    };
    std::stable_sort(s.begin(), s.end(), key_less);
    // tie groups: equal constant children
    std::vector<std::pair<int, int>> groups;
    for (int a = 0; a < n;) {
      int b = a + 1;
      while (b < n && !key_less(s[a], s[b]) && !key_less(s[b], s[a])) ++b;
      if (b - a > 1) groups.push_back({a, b});
      a = b;
    }
    Perm chosen = s;
    if (!groups.empty()) {
      int best_op = act_node(t, s);
      std::function<void(std::size_t, Perm&)> rec = [&](std::size_t g, Perm& cur) {
        if (g == groups.size()) {
          int o = act_node(t, cur);
          if (o < best_op) {
            best_op = o;
            chosen = cur;
          }
          return;
        }
        auto [a, b] = groups[g];
        std::sort(cur.begin() + a, cur.begin() + b);
        do rec(g + 1, cur);
        while (std::next_permutation(cur.begin() + a, cur.begin() + b));
      };
      Perm cur = s;
      rec(0, cur);
    }
    if (!is_identity(chosen)) {
      t.op = act_node(t, chosen);
      std::vector<Term> kids(n);
      for (int j = 0; j < n; ++j) kids[j] = std::move(t.kids[chosen[j]]);
      t.kids = std::move(kids);
    }
    return best;
  }

  // ---------------------------------------------------------------- words

  std::vector<int> generators_into(bool p_side, int color) const {
    std::vector<int> out;
    const FiniteOperad& o = p_side ? p_ : q_;
    int mx = p_side ? p_max_ : q_max_;
    for (int n = 0; n <= mx; ++n)
      for (int g : o.ops_into(color, n))
        if (!(n == 1 && g == o.unit(color))) out.push_back(g);
    return out;
  }

  const std::vector<Term>& planar(int color, int size) {
    auto key = std::pair{color, size};
    auto it = planar_.find(key);
    if (it != planar_.end()) return it->second;
    std::vector<Term> out;
    if (size == 0) {
      out.push_back(Term::hole(color, -1));
    } else {
      int c = p_color(color), y = q_color(color);
      for (int side = 0; side < 2; ++side) {
        bool ps = side == 0;
        for (int g : generators_into(ps, ps ? c : y)) {
          Term node = ps ? Term::pnode(g, y, {}) : Term::qnode(c, g, {});
          int n = static_cast<int>((ps ? p_.inputs(g) : q_.inputs(g)).size());
          node.kids.resize(n);
          std::function<void(int, int, int)> fill = [&](int j, int left, int leaves) {
            if (j == n) {
              if (left == 0) out.push_back(node);
              return;
            }
            int sc = slot_color(node, j);
            for (int s = 0; s <= left; ++s)
              for (const auto& k : planar(sc, s)) {
                int l = k.leaves();
                if (leaves + l > max_arity_) continue;
                node.kids[j] = k;
                fill(j + 1, left - s, leaves + l);
              }
          };
          fill(0, size - 1, 0);
        }
      }
    }
    return planar_.emplace(key, std::move(out)).first->second;
  }

  void generate() {
    for (int color = 0; color < num_colors(); ++color)
      for (int s = 0; s <= bound_; ++s)
        for (const auto& t0 : planar(color, s)) {
          int n = t0.leaves();
          if (n > max_arity_) continue;
          Perm lab = identity_perm(n);
          do {
            Term t = t0;
            int pos = 0;
            relabel(t, [&](int) { return lab[pos++]; });
            canonicalize(t);
            auto e = encode(t);
            if (index_.count(e)) continue;
            index_.emplace(std::move(e), static_cast<int>(words_.size()));
            words_.push_back(std::move(t));
          } while (std::next_permutation(lab.begin(), lab.end()));
        }
    for (auto& w : words_) sig_.push_back(signature_of(w));
  }

  Signature signature_of(const Term& t) const {
    Signature s{std::vector<int>(t.leaves(), -1), out_color(t)};
    std::function<void(const Term&)> go = [&](const Term& x) {
      if (x.kind == Term::Hole) {
        s.in.at(x.label) = x.color;
        return;
      }
      for (auto& k : x.kids) go(k);
    };
    go(t);
    return s;
  }

  // ---------------------------------------------------------------- relations

  // Links word w to the word obtained by replacing the node at `path` by `repl`.
  int link(int w, const std::vector<int>& path, Term repl) {
    Term t = words_[w];
    Term* at = &t;
    for (int j : path) at = &at->kids[j];
    *at = std::move(repl);
    canonicalize(t);
    auto it = index_.find(encode(t));
    if (it == index_.end()) {
      if (t.size() <= bound_ && t.leaves() <= max_arity_) throw Error("word missing from the table");
      touched_.insert(sig_[w]);
      return 0;
    }
    return uf_.unite(w, it->second) ? 1 : 0;
  }

  // Merge a node with its j-th child of the same slice.
  Term merged(const Term& t, int j) const {
    const Term& k = t.kids[j];
    bool ps = t.kind == Term::PNode;
    int g = ps ? p_.compose(t.op, j, k.op) : q_.compose(t.op, j, k.op);
    std::vector<Term> kids(t.kids.begin(), t.kids.begin() + j);
    kids.insert(kids.end(), k.kids.begin(), k.kids.end());
    kids.insert(kids.end(), t.kids.begin() + j + 1, t.kids.end());
    const FiniteOperad& o = ps ? p_ : q_;
    if (kids.size() == 1 && g == o.unit(o.output(g))) return kids[0];
    Term r = t;
    r.op = g;
    r.kids = std::move(kids);
    return r;
  }

  // All τ with g·τ == h for operations of the given side.
  std::vector<Perm> matching_perms(bool ps, int g, int h) const {
    const FiniteOperad& o = ps ? p_ : q_;
    std::vector<Perm> out;
    int n = static_cast<int>(o.inputs(g).size());
    if (static_cast<int>(o.inputs(h).size()) != n || o.output(g) != o.output(h)) return out;
    for (auto& s : all_perms(n))
      if (o.act(g, s) == h) out.push_back(s);
    return out;
  }

  // Interchange with a top node of side `ps` whose children are all of the
  // other side; returns the other-side-on-top terms.
  std::vector<Term> interchanged(const Term& t) const {
    bool ps = t.kind == Term::PNode;
    const FiniteOperad& top = ps ? p_ : q_;
    const FiniteOperad& bot = ps ? q_ : p_;
    Term::Kind other = ps ? Term::QNode : Term::PNode;
    int n = static_cast<int>(t.kids.size());
    auto make_top = [&](int g, int col, std::vector<Term> kids) {
      return ps ? Term::pnode(g, col, std::move(kids)) : Term::qnode(col, g, std::move(kids));
    };
    auto make_bot = [&](int g, int col, std::vector<Term> kids) {
      return ps ? Term::qnode(col, g, std::move(kids)) : Term::pnode(g, col, std::move(kids));
    };
    std::vector<Term> out;
    int d = top.output(t.op);
    if (n == 0) {
      // nullary top generator: t = (q applied to copies of t at its inputs), any q
      int mx = ps ? q_max_ : p_max_;
      for (int m = 0; m <= mx; ++m)
        for (int g : bot.ops_into(t.color, m)) {
          if (m == 1 && g == bot.unit(t.color)) continue;
          std::vector<Term> kids;
          for (int yk : bot.inputs(g)) kids.push_back(make_top(t.op, yk, {}));
          out.push_back(make_bot(g, d, std::move(kids)));
        }
      return out;
    }
    for (auto& k : t.kids)
      if (k.kind != other) return out;
    int g0 = t.kids[0].op;
    int m = static_cast<int>(bot.inputs(g0).size());
    std::vector<std::vector<Perm>> taus(n);
    for (int i = 0; i < n; ++i) {
      taus[i] = matching_perms(!ps, g0, t.kids[i].op);
      if (taus[i].empty()) return out;
    }
    std::vector<Perm> pick(n);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        std::vector<Term> top_kids;
        auto ys = bot.inputs(g0);
        for (int k = 0; k < m; ++k) {
          std::vector<Term> h(n);
          for (int a = 0; a < n; ++a) h[a] = t.kids[a].kids[perm_inverse(pick[a])[k]];
          top_kids.push_back(make_top(t.op, ys[k], std::move(h)));
        }
        out.push_back(make_bot(g0, d, std::move(top_kids)));
        return;
      }
      for (auto& s : taus[i]) {
        pick[i] = s;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }

  int relate(int w) {
    int merged_count = 0;
    std::vector<int> path;
    std::function<void(const Term&)> visit = [&](const Term& node) {
      if (node.kind == Term::Hole) return;
      for (int j = 0; j < static_cast<int>(node.kids.size()); ++j)
        if (node.kids[j].kind == node.kind) merged_count += link(w, path, merged(node, j));
      for (auto& r : interchanged(node)) merged_count += link(w, path, std::move(r));
      for (int j = 0; j < static_cast<int>(node.kids.size()); ++j) {
        path.push_back(j);
        visit(node.kids[j]);
        path.pop_back();
      }
    };
    visit(words_[w]);
    return merged_count;
  }

  void index_classes() {
    by_sig_.clear();
    by_out_.clear();
    class_sig_.clear();
    for (int w = 0; w < static_cast<int>(words_.size()); ++w) {
      if (uf_.find(w) != w) continue;
      class_sig_[w] = sig_[w];
      by_sig_[sig_[w]].push_back(w);
      by_out_[{sig_[w].out, static_cast<int>(sig_[w].in.size())}].push_back(w);
    }
  }

  struct ConstUF : UnionFind {
    using UnionFind::UnionFind;
    int find_const(int x) const {
      while (p[x] != x) x = p[x];
      return x;
    }
  };

  FiniteOperad p_, q_;
  int bound_, max_arity_, p_max_ = 0, q_max_ = 0;
  std::map<std::pair<int, int>, std::vector<Term>> planar_;
  std::vector<Term> words_;
  std::vector<Signature> sig_;
  std::map<std::vector<int>, int> index_;
  ConstUF uf_;
  std::set<Signature> touched_;
  std::map<Signature, std::vector<int>> by_sig_;
  std::map<std::pair<int, int>, std::vector<int>> by_out_;
  std::map<int, Signature> class_sig_;
};

// Dendrex count of N_d(P⊗Q) at r by brute force over edge colorings, using
// class counts per signature.
inline std::size_t tensor_nerve_count(const TensorOperad& t, const Tree& r) {
  std::size_t total = 0;
  std::vector<int> col(r.size(), 0);
  std::function<void(int)> rec = [&](int e) {
    if (e == static_cast<int>(r.size())) {
      std::size_t prod = 1;
      for (int v : r.vertex_edges()) {
        TensorOperad::Signature s{{}, col[v]};
        for (int k : r.kids(v)) s.in.push_back(col[k]);
        prod *= t.classes(s).size();
        if (!prod) break;
      }
      total += prod;
      return;
    }
    for (int c = 0; c < t.num_colors(); ++c) {
      col[e] = c;
      rec(e + 1);
    }
  };
  rec(0);
  return total;
}

struct TensorNerveReport {
  bool agree = false;
  bool frontier_untouched = false;
  std::size_t closure_count = 0, oracle_count = 0;
};

// Dendrices of N_d(Ω(a)⊗Ω(b)) at r through the nerve of the closure, against
// colorings × class counts from a fresh closure at word_bound + 2.
inline TensorNerveReport compare_tensor_nerve(const Tree& a, const Tree& b, const Tree& r, int word_bound) {
  int ar = std::max(1, static_cast<int>(r.max_arity()));
  auto pa = materialize(free_operad(a), static_cast<int>(a.size()));
  auto pb = materialize(free_operad(b), static_cast<int>(b.size()));
  auto t = std::make_shared<const TensorOperad>(pa, pb, word_bound, ar);
  TensorOperad oracle(pa, pb, word_bound + 2, ar);
  TensorNerveReport rep;
  rep.closure_count = Nerve<TensorOperad>(t).dendrices(r).size();
  rep.oracle_count = tensor_nerve_count(oracle, r);
  rep.agree = rep.closure_count == rep.oracle_count;
  rep.frontier_untouched = !t->any_frontier_touched();
  return rep;
}

}  // namespace dendro
