#pragma once

#include <concepts>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}
inline bool is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}
inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}
// (a*b)(j) = a(b(j))
inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) c[j] = a[b[j]];
  return c;
}
inline Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[a[j]] = static_cast<int>(j);
  return c;
}
// The permutation s with from[s[j]] == to[j]; the lists hold distinct labels.
template <class T>
Perm perm_matching(const std::vector<T>& from, const std::vector<T>& to) {
  Perm s(to.size());
  for (std::size_t j = 0; j < to.size(); ++j) {
    auto it = std::find(from.begin(), from.end(), to[j]);
    if (it == from.end()) throw Error("label lists do not match");
    s[j] = static_cast<int>(it - from.begin());
  }
  return s;
}

// Right action convention throughout: input j of p*s is input s[j] of p, so
// (p*s)*t == p*(s∘t).
template <class P>
concept OperadLike = requires(const P& p, const typename P::Op& o, const std::vector<int>& in, int c,
                              const Perm& s) {
  typename P::Op;
  { p.num_colors() } -> std::convertible_to<int>;
  { p.color_name(c) } -> std::convertible_to<std::string>;
  { p.inputs(o) } -> std::convertible_to<std::vector<int>>;
  { p.output(o) } -> std::convertible_to<int>;
  { p.ops(in, c) } -> std::same_as<std::vector<typename P::Op>>;
  { p.ops_into(c, c) } -> std::same_as<std::vector<typename P::Op>>;
  { p.compose(o, c, o) } -> std::same_as<typename P::Op>;
  { p.act(o, s) } -> std::same_as<typename P::Op>;
  { p.unit(c) } -> std::same_as<typename P::Op>;
  { p.op_name(o) } -> std::convertible_to<std::string>;
};

template <OperadLike P>
std::vector<typename P::Op> all_ops(const P& p, int max_arity) {
  std::vector<typename P::Op> out;
  for (int c = 0; c < p.num_colors(); ++c)
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : p.ops_into(c, n)) out.push_back(o);
  return out;
}

// ---------------------------------------------------------------- explicit operads

class FiniteOperad {
 public:
  using Op = int;
  struct OpData {
    std::string name;
    std::vector<int> in;
    int out;
  };

  int add_color(const std::string& name) {
    if (color_index_.count(name)) throw Error("duplicate color '" + name + "'");
    colors_.push_back(name);
    color_index_[name] = static_cast<int>(colors_.size()) - 1;
    units_.push_back(-1);
    return static_cast<int>(colors_.size()) - 1;
  }
  int add_op(const std::string& name, std::vector<int> in, int out) {
    if (op_index_.count(name)) throw Error("duplicate operation '" + name + "'");
    for (int c : in)
      if (c < 0 || c >= num_colors()) throw Error("operation '" + name + "' has an unknown input color");
    if (out < 0 || out >= num_colors()) throw Error("operation '" + name + "' has an unknown output color");
    ops_.push_back({name, std::move(in), out});
    int id = static_cast<int>(ops_.size()) - 1;
    op_index_[name] = id;
    by_out_[{out, static_cast<int>(ops_[id].in.size())}].push_back(id);
    return id;
  }
  // Adds identity operations "id_<color>" for colors without a unit.
  void add_missing_units() {
    for (int c = 0; c < num_colors(); ++c)
      if (units_[c] < 0) set_unit(c, add_op("id_" + colors_[c], {c}, c));
  }
  void set_unit(int c, int op) {
    if (ops_[op].in != std::vector<int>{c} || ops_[op].out != c) throw Error("unit has the wrong signature");
    units_[c] = op;
  }
  void set_comp(int p, int i, int q, int r) { comp_[{p, i, q}] = r; }
  void set_act(int p, const Perm& s, int r) { act_[{p, s}] = r; }

  int num_colors() const { return static_cast<int>(colors_.size()); }
  int num_ops() const { return static_cast<int>(ops_.size()); }
  const std::string& color_name(int c) const { return colors_.at(c); }
  const std::vector<std::string>& colors() const { return colors_; }
  const std::vector<OpData>& op_data() const { return ops_; }
  std::optional<int> find_color(const std::string& n) const {
    auto it = color_index_.find(n);
    if (it == color_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_op(const std::string& n) const {
    auto it = op_index_.find(n);
    if (it == op_index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<int>& inputs(int o) const { return ops_.at(o).in; }
  int output(int o) const { return ops_.at(o).out; }
  std::string op_name(int o) const { return ops_.at(o).name; }
  std::vector<int> ops(const std::vector<int>& in, int c) const {
    std::vector<int> out;
    auto it = by_out_.find({c, static_cast<int>(in.size())});
    if (it == by_out_.end()) return out;
    for (int o : it->second)
      if (ops_[o].in == in) out.push_back(o);
    return out;
  }
  std::vector<int> ops_into(int c, int n) const {
    auto it = by_out_.find({c, n});
    return it == by_out_.end() ? std::vector<int>{} : it->second;
  }
  int unit(int c) const {
    if (units_.at(c) < 0) throw Error("color '" + colors_[c] + "' has no unit");
    return units_[c];
  }
  bool has_comp(int p, int i, int q) const { return comp_.count({p, i, q}) != 0; }
  int compose(int p, int i, int q) const {
    if (ops_.at(p).in.at(i) != ops_.at(q).out) throw Error("composition of incompatible operations");
    if (q == units_[ops_[q].out]) return p;
    if (p == units_[ops_[p].out]) return q;
    auto it = comp_.find({p, i, q});
    if (it == comp_.end())
      throw Error("missing composition " + ops_[p].name + " o_" + std::to_string(i) + " " + ops_[q].name);
    return it->second;
  }
  int act(int p, const Perm& s) const {
    if (s.size() != ops_.at(p).in.size()) throw Error("permutation of the wrong size");
    if (is_identity(s)) return p;
    auto it = act_.find({p, s});
    if (it == act_.end()) throw Error("missing symmetric action on " + ops_[p].name);
    return it->second;
  }

  const std::map<std::tuple<int, int, int>, int>& comp_table() const { return comp_; }
  const std::map<std::pair<int, Perm>, int>& act_table() const { return act_; }

  // Throws on any violated operad axiom.
  void validate() const;

 private:
  std::vector<std::string> colors_;
  std::map<std::string, int> color_index_;
  std::vector<OpData> ops_;
  std::map<std::string, int> op_index_;
  std::vector<int> units_;
  std::map<std::pair<int, int>, std::vector<int>> by_out_;
  std::map<std::tuple<int, int, int>, int> comp_;
  std::map<std::pair<int, Perm>, int> act_;
};

// ---------------------------------------------------------------- free operad on a tree

class TreeOperad {
 public:
  struct Op {
    std::vector<int> in;
    int out;
    auto operator<=>(const Op&) const = default;
  };

  explicit TreeOperad(Tree t) : t_(make_ref(std::move(t))), ls_(leafsets(*t_)) {}
  explicit TreeOperad(TreeRef t) : t_(std::move(t)), ls_(leafsets(*t_)) {}

  const Tree& tree() const { return *t_; }
  const TreeRef& tree_ref() const { return t_; }
  int num_colors() const { return static_cast<int>(t_->size()); }
  std::string color_name(int c) const { return t_->name(c); }
  const std::vector<int>& inputs(const Op& o) const { return o.in; }
  int output(const Op& o) const { return o.out; }
  std::vector<Op> ops(const std::vector<int>& in, int c) const {
    if (spans(*t_, c, in)) return {Op{in, c}};
    return {};
  }
  std::vector<Op> ops_into(int c, int n) const {
    std::vector<Op> out;
    for (const auto& l : ls_.at(c)) {
      if (static_cast<int>(l.size()) != n) continue;
      auto p = l;
      do out.push_back(Op{p, c});
      while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }
  // Leaf sets of subtrees with root c (unordered operations).
  const std::vector<std::vector<int>>& leafsets_at(int c) const { return ls_.at(c); }
  Op compose(const Op& p, int i, const Op& q) const {
    if (p.in.at(i) != q.out) throw Error("composition of incompatible operations");
    Op r{{}, p.out};
    r.in.insert(r.in.end(), p.in.begin(), p.in.begin() + i);
    r.in.insert(r.in.end(), q.in.begin(), q.in.end());
    r.in.insert(r.in.end(), p.in.begin() + i + 1, p.in.end());
    return r;
  }
  Op act(const Op& p, const Perm& s) const {
    Op r{std::vector<int>(s.size()), p.out};
    for (std::size_t j = 0; j < s.size(); ++j) r.in[j] = p.in.at(s[j]);
    return r;
  }
  Op unit(int c) const { return Op{{c}, c}; }
  std::string op_name(const Op& o) const {
    std::string s = "(";
    for (std::size_t j = 0; j < o.in.size(); ++j) s += (j ? "," : "") + t_->name(o.in[j]);
    return s + ";" + t_->name(o.out) + ")";
  }

 private:
  TreeRef t_;
  std::vector<std::vector<std::vector<int>>> ls_;
};

inline TreeOperad free_operad(const Tree& t) { return TreeOperad(t); }

// One color, one operation per arity, trivial symmetric action.
class CommutativeOperad {
 public:
  using Op = int;  // the arity
  int num_colors() const { return 1; }
  std::string color_name(int) const { return "*"; }
  std::vector<int> inputs(int o) const { return std::vector<int>(o, 0); }
  int output(int) const { return 0; }
  std::vector<int> ops(const std::vector<int>& in, int) const { return {static_cast<int>(in.size())}; }
  std::vector<int> ops_into(int, int n) const { return {n}; }
  int compose(int p, int, int q) const { return p + q - 1; }
  int act(int p, const Perm&) const { return p; }
  int unit(int) const { return 1; }
  std::string op_name(int o) const { return "mu" + std::to_string(o); }
};

static_assert(OperadLike<FiniteOperad>);
static_assert(OperadLike<TreeOperad>);
static_assert(OperadLike<CommutativeOperad>);

// ---------------------------------------------------------------- axioms

namespace detail {
// labels of p∘_i q when p's inputs carry pl and q's carry ql
inline std::vector<int> comp_labels(const std::vector<int>& pl, int i, const std::vector<int>& ql) {
  std::vector<int> r(pl.begin(), pl.begin() + i);
  r.insert(r.end(), ql.begin(), ql.end());
  r.insert(r.end(), pl.begin() + i + 1, pl.end());
  return r;
}
inline std::vector<int> range_labels(int base, int n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), base);
  return r;
}
}  // namespace detail

// Exhaustive check of unit, associativity, equivariance and action axioms on all
// operations of arity <= max_arity. Returns a description of the first failure.
template <OperadLike P>
std::optional<std::string> check_operad_axioms(const P& p, int max_arity) {
  using detail::comp_labels;
  using detail::range_labels;
  auto ops = all_ops(p, max_arity);
  auto name = [&](const typename P::Op& o) { return std::string(p.op_name(o)); };
  for (const auto& o : ops) {
    std::vector<int> in = p.inputs(o);
    int n = static_cast<int>(in.size());
    if (!(p.compose(p.unit(p.output(o)), 0, o) == o)) return "left unit fails on " + name(o);
    for (int i = 0; i < n; ++i)
      if (!(p.compose(o, i, p.unit(in[i])) == o)) return "right unit fails on " + name(o);
    for (const auto& s : all_perms(n)) {
      auto os = p.act(o, s);
      std::vector<int> ins = p.inputs(os);
      for (int j = 0; j < n; ++j)
        if (ins[j] != in[s[j]]) return "action has the wrong signature on " + name(o);
      for (const auto& t : all_perms(n))
        if (!(p.act(os, t) == p.act(o, perm_compose(s, t)))) return "action is not a group action on " + name(o);
    }
  }
  for (const auto& a : ops) {
    std::vector<int> ain = p.inputs(a);
    int n = static_cast<int>(ain.size());
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m + n - 1 <= max_arity; ++m) {
        for (const auto& b : p.ops_into(ain[i], m)) {
          auto ab = p.compose(a, i, b);
          std::vector<int> pl = range_labels(0, n), ql = range_labels(100, m);
          // equivariance in the outer slot: slot j of a*s is slot s[j] == i of a
          for (const auto& s : all_perms(n)) {
            int j = static_cast<int>(std::find(s.begin(), s.end(), i) - s.begin());
            auto lhs = p.compose(p.act(a, s), j, b);
            std::vector<int> sl(n);
            for (int x = 0; x < n; ++x) sl[x] = pl[s[x]];
            auto lhs_l = comp_labels(sl, j, ql);
            auto rhs_l = comp_labels(pl, i, ql);
            if (!(p.act(ab, perm_matching(rhs_l, lhs_l)) == lhs))
              return "equivariance fails for " + name(a) + " o_" + std::to_string(i) + " " + name(b);
          }
          for (const auto& t : all_perms(m)) {
            auto lhs = p.compose(a, i, p.act(b, t));
            std::vector<int> tl(m);
            for (int j = 0; j < m; ++j) tl[j] = ql[t[j]];
            auto lhs_l = comp_labels(pl, i, tl);
            auto rhs_l = comp_labels(pl, i, ql);
            if (!(p.act(ab, perm_matching(rhs_l, lhs_l)) == lhs))
              return "inner equivariance fails for " + name(a) + " o_" + std::to_string(i) + " " + name(b);
          }
          std::vector<int> bin = p.inputs(b);
          // sequential associativity
          for (int j = 0; j < m; ++j)
            for (int k = 0; k + n + m - 2 <= max_arity; ++k)
              for (const auto& c : p.ops_into(bin[j], k))
                if (!(p.compose(ab, i + j, c) == p.compose(a, i, p.compose(b, j, c))))
                  return "associativity fails for " + name(a) + ", " + name(b) + ", " + name(c);
          // parallel associativity
          for (int k = i + 1; k < n; ++k)
            for (int l = 0; l + n + m - 2 <= max_arity; ++l)
              for (const auto& c : p.ops_into(ain[k], l))
                if (!(p.compose(ab, k + m - 1, c) == p.compose(p.compose(a, k, c), i, b)))
                  return "parallel associativity fails for " + name(a) + ", " + name(b) + ", " + name(c);
        }
      }
    }
  }
  return std::nullopt;
}

inline void FiniteOperad::validate() const {
  for (int c = 0; c < num_colors(); ++c)
    if (units_[c] < 0) throw Error("color '" + colors_[c] + "' has no unit");
  int max_ar = 0;
  for (auto& o : ops_) max_ar = std::max(max_ar, static_cast<int>(o.in.size()));
  // closure: every composable pair must have a recorded result
  for (int p = 0; p < num_ops(); ++p)
    for (int i = 0; i < static_cast<int>(ops_[p].in.size()); ++i)
      for (int q = 0; q < num_ops(); ++q)
        if (ops_[q].out == ops_[p].in[i]) {
          int r = compose(p, i, q);
          std::vector<int> sig = ops_[p].in;
          sig.erase(sig.begin() + i);
          sig.insert(sig.begin() + i, ops_[q].in.begin(), ops_[q].in.end());
          if (ops_[r].in != sig || ops_[r].out != ops_[p].out)
            throw Error("composition " + ops_[p].name + " o_" + std::to_string(i) + " " + ops_[q].name +
                        " has the wrong signature");
        }
  if (auto f = check_operad_axioms(*this, max_ar)) throw Error(*f);
}

// Materializes the operations of arity <= max_arity of p into explicit tables.
// Composites of larger arity are dropped, so pass a bound covering all operations.
template <OperadLike P>
FiniteOperad materialize(const P& p, int max_arity) {
  FiniteOperad f;
  for (int c = 0; c < p.num_colors(); ++c) f.add_color(p.color_name(c));
  std::map<typename P::Op, int> id;
  auto ops = all_ops(p, max_arity);
  for (const auto& o : ops) {
    std::vector<int> in = p.inputs(o);
    id[o] = f.add_op(p.op_name(o), in, p.output(o));
  }
  for (int c = 0; c < p.num_colors(); ++c) f.set_unit(c, id.at(p.unit(c)));
  for (const auto& a : ops) {
    std::vector<int> in = p.inputs(a);
    for (const auto& s : all_perms(static_cast<int>(in.size())))
      if (!is_identity(s)) f.set_act(id[a], s, id.at(p.act(a, s)));
    for (int i = 0; i < static_cast<int>(in.size()); ++i)
      for (int m = 0; m + static_cast<int>(in.size()) - 1 <= max_arity; ++m)
        for (const auto& b : p.ops_into(in[i], m)) f.set_comp(id[a], i, id[b], id.at(p.compose(a, i, b)));
  }
  return f;
}

// ---------------------------------------------------------------- categories

struct FiniteCategory {
  struct Arrow {
    std::string name;
    int src, tgt;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identity;
  std::map<std::pair<int, int>, int> comp;  // (g, f) -> g∘f

  int compose(int g, int f) const {
    if (arrows.at(f).tgt != arrows.at(g).src) throw Error("arrows not composable");
    auto it = comp.find({g, f});
    if (it == comp.end()) throw Error("missing composite " + arrows[g].name + " o " + arrows[f].name);
    return it->second;
  }
  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
      if (arrows[i].src == a && arrows[i].tgt == b) out.push_back(i);
    return out;
  }
  void validate() const {
    int n = static_cast<int>(arrows.size());
    for (int a = 0; a < static_cast<int>(objects.size()); ++a) {
      int i = identity.at(a);
      if (arrows[i].src != a || arrows[i].tgt != a) throw Error("identity with the wrong endpoints");
    }
    for (int f = 0; f < n; ++f) {
      if (compose(identity[arrows[f].tgt], f) != f || compose(f, identity[arrows[f].src]) != f)
        throw Error("unit law fails at " + arrows[f].name);
      for (int g = 0; g < n; ++g) {
        if (arrows[g].src != arrows[f].tgt) continue;
        int gf = compose(g, f);
        if (arrows[gf].src != arrows[f].src || arrows[gf].tgt != arrows[g].tgt)
          throw Error("composite with the wrong endpoints");
        for (int h = 0; h < n; ++h)
          if (arrows[h].src == arrows[g].tgt && compose(h, gf) != compose(compose(h, g), f))
            throw Error("associativity fails");
      }
    }
  }

  // The poset 0 < 1 < ... < n.
  static FiniteCategory chain(int n) {
    FiniteCategory c;
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i <= n; ++i) c.objects.push_back(std::to_string(i));
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        idx[{i, j}] = static_cast<int>(c.arrows.size());
        c.arrows.push_back({i == j ? "id" + std::to_string(i) : std::to_string(i) + "<" + std::to_string(j), i, j});
      }
    for (int i = 0; i <= n; ++i) c.identity.push_back(idx[{i, i}]);
    for (auto [f, fi] : idx)
      for (auto [g, gi] : idx)
        if (f.second == g.first) c.comp[{gi, fi}] = idx[{f.first, g.second}];
    return c;
  }
  static FiniteCategory terminal() { return chain(0); }
};

inline FiniteOperad from_category(const FiniteCategory& c) {
  FiniteOperad p;
  for (auto& o : c.objects) p.add_color(o);
  for (auto& a : c.arrows) p.add_op(a.name, {a.src}, a.tgt);
  for (int o = 0; o < static_cast<int>(c.objects.size()); ++o) p.set_unit(o, c.identity[o]);
  for (auto [gf, r] : c.comp) p.set_comp(gf.first, 0, gf.second, r);
  return p;
}

template <OperadLike P>
FiniteCategory underlying_category(const P& p) {
  FiniteCategory c;
  std::map<typename P::Op, int> id;
  std::vector<typename P::Op> unary;
  for (int x = 0; x < p.num_colors(); ++x) c.objects.push_back(p.color_name(x));
  for (int x = 0; x < p.num_colors(); ++x)
    for (auto& o : p.ops_into(x, 1)) {
      id[o] = static_cast<int>(c.arrows.size());
      c.arrows.push_back({p.op_name(o), p.inputs(o)[0], p.output(o)});
      unary.push_back(o);
    }
  for (int x = 0; x < p.num_colors(); ++x) c.identity.push_back(id.at(p.unit(x)));
  for (auto& g : unary)
    for (auto& f : unary)
      if (p.output(f) == p.inputs(g)[0]) c.comp[{id[g], id[f]}] = id.at(p.compose(g, 0, f));
  return c;
}

// ---------------------------------------------------------------- properties

struct SigmaFreeReport {
  bool free = true;
  std::string witness;  // an operation fixed by a non-identity permutation
};

template <OperadLike P>
SigmaFreeReport sigma_free_report(const P& p, int max_arity) {
  for (const auto& o : all_ops(p, max_arity)) {
    std::vector<int> in = p.inputs(o);
    int n = static_cast<int>(in.size());
    if (n < 2) continue;
    for (const auto& s : all_perms(n)) {
      if (is_identity(s)) continue;
      bool keeps = true;
      for (int j = 0; j < n && keeps; ++j) keeps = in[s[j]] == in[j];
      if (keeps && p.act(o, s) == o) {
        std::string w = p.op_name(o) + " fixed by [";
        for (int j = 0; j < n; ++j) w += (j ? "," : "") + std::to_string(s[j]);
        return {false, w + "]"};
      }
    }
  }
  return {};
}

template <OperadLike P>
bool is_sigma_free(const P& p, int max_arity) {
  return sigma_free_report(p, max_arity).free;
}

// leq[c][d]: c <= d in the preorder generated by "c is an input of an operation into d".
template <OperadLike P>
std::vector<std::vector<char>> object_poset(const P& p, int max_arity) {
  int n = p.num_colors();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int c = 0; c < n; ++c) leq[c][c] = 1;
  for (const auto& o : all_ops(p, max_arity))
    for (int c : p.inputs(o)) leq[c][p.output(o)] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = 1;
  return leq;
}

// ---------------------------------------------------------------- morphisms of explicit operads

struct OperadMorphism {
  std::vector<int> on_objects;
  std::vector<int> on_ops;
  bool operator==(const OperadMorphism&) const = default;
};

inline std::optional<std::string> check_morphism(const FiniteOperad& p, const FiniteOperad& q,
                                                 const OperadMorphism& m) {
  if (static_cast<int>(m.on_objects.size()) != p.num_colors() || static_cast<int>(m.on_ops.size()) != p.num_ops())
    return "size mismatch";
  for (int o = 0; o < p.num_ops(); ++o) {
    int t = m.on_ops[o];
    std::vector<int> in;
    for (int c : p.inputs(o)) in.push_back(m.on_objects[c]);
    if (q.inputs(t) != in || q.output(t) != m.on_objects[p.output(o)]) return "signature not preserved at " + p.op_name(o);
  }
  for (int c = 0; c < p.num_colors(); ++c)
    if (m.on_ops[p.unit(c)] != q.unit(m.on_objects[c])) return "unit not preserved at " + p.color_name(c);
  for (auto& [k, r] : p.comp_table()) {
    auto [a, i, b] = k;
    if (q.compose(m.on_ops[a], i, m.on_ops[b]) != m.on_ops[r]) return "composition not preserved";
  }
  for (auto& [k, r] : p.act_table())
    if (q.act(m.on_ops[k.first], k.second) != m.on_ops[r]) return "symmetric action not preserved";
  return std::nullopt;
}

// All operad morphisms p -> q, by backtracking over the object map and then
// the operations, checking every composition and action constraint as soon as
// its operands are assigned.
inline std::vector<OperadMorphism> enumerate_morphisms(const FiniteOperad& p, const FiniteOperad& q,
                                                       std::size_t cap = 1000000) {
  std::vector<OperadMorphism> out;
  OperadMorphism m{std::vector<int>(p.num_colors(), -1), std::vector<int>(p.num_ops(), -1)};
  // constraints indexed by the largest operation id they mention
  struct Con {
    int a, i, b, r;
    Perm s;
  };
  std::vector<std::vector<Con>> cons(p.num_ops());
  for (auto& [k, r] : p.comp_table()) {
    auto [a, i, b] = k;
    cons[std::max({a, b, r})].push_back({a, i, b, r, {}});
  }
  for (auto& [k, r] : p.act_table()) cons[std::max(k.first, r)].push_back({k.first, -1, -1, r, k.second});
  std::function<void(int)> ops_rec = [&](int o) {
    if (out.size() >= cap) throw Error("morphism enumeration exceeded its cap");
    if (o == p.num_ops()) {
      out.push_back(m);
      return;
    }
    std::vector<int> in;
    for (int c : p.inputs(o)) in.push_back(m.on_objects[c]);
    int tgt = m.on_objects[p.output(o)];
    std::vector<int> cands;
    bool is_unit = false;
    for (int c = 0; c < p.num_colors(); ++c)
      if (p.unit(c) == o) is_unit = true;
    if (is_unit) cands = {q.unit(tgt)};
    else cands = q.ops(in, tgt);
    for (int t : cands) {
      m.on_ops[o] = t;
      bool ok = true;
      for (auto& c : cons[o]) {
        if (c.i >= 0) ok = q.compose(m.on_ops[c.a], c.i, m.on_ops[c.b]) == m.on_ops[c.r];
        else ok = q.act(m.on_ops[c.a], c.s) == m.on_ops[c.r];
        if (!ok) break;
      }
      if (ok) ops_rec(o + 1);
    }
    m.on_ops[o] = -1;
  };
  std::function<void(int)> obj_rec = [&](int c) {
    if (c == p.num_colors()) {
      ops_rec(0);
      return;
    }
    for (int d = 0; d < q.num_colors(); ++d) {
      m.on_objects[c] = d;
      obj_rec(c + 1);
    }
  };
  obj_rec(0);
  return out;
}

}  // namespace dendro
