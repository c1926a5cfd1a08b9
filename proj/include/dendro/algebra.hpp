#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/dendroidal.hpp"
#include "dendro/operad.hpp"

namespace dendro {

// An algebra over a finite operad in finite sets. action[o] is a table over
// the product of the input carriers, first input most significant.
struct FinSetAlgebra {
  std::vector<int> carrier;
  std::vector<std::vector<int>> action;
  bool operator==(const FinSetAlgebra&) const = default;
  auto operator<=>(const FinSetAlgebra&) const = default;
};

inline std::size_t table_size(const FiniteOperad& p, const FinSetAlgebra& a, int o) {
  std::size_t n = 1;
  for (int c : p.inputs(o)) n *= static_cast<std::size_t>(a.carrier[c]);
  return n;
}

inline std::size_t table_index(const FiniteOperad& p, const FinSetAlgebra& a, int o, const std::vector<int>& args) {
  std::size_t k = 0;
  const auto& in = p.inputs(o);
  for (std::size_t j = 0; j < in.size(); ++j) k = k * a.carrier[in[j]] + args[j];
  return k;
}

inline int apply(const FiniteOperad& p, const FinSetAlgebra& a, int o, const std::vector<int>& args) {
  return a.action.at(o).at(table_index(p, a, o, args));
}

namespace detail {

inline void for_each_args(const std::vector<int>& sizes, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> x(sizes.size(), 0);
  for (int s : sizes)
    if (s == 0) return;
  while (true) {
    visit(x);
    int j = static_cast<int>(x.size()) - 1;
    while (j >= 0 && ++x[j] == sizes[j]) x[j--] = 0;
    if (j < 0) return;
  }
}

inline std::vector<int> sizes_of(const FiniteOperad& p, const FinSetAlgebra& a, int o) {
  std::vector<int> s;
  for (int c : p.inputs(o)) s.push_back(a.carrier[c]);
  return s;
}

// Checks one action constraint; ops referenced must have tables.
inline bool act_holds(const FiniteOperad& p, const FinSetAlgebra& a, int o, const Perm& s, int r) {
  bool ok = true;
  for_each_args(sizes_of(p, a, r), [&](const std::vector<int>& y) {
    if (!ok) return;
    std::vector<int> x(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) x[s[j]] = y[j];
    ok = apply(p, a, r, y) == apply(p, a, o, x);
  });
  return ok;
}

inline bool comp_holds(const FiniteOperad& p, const FinSetAlgebra& a, int o, int i, int q, int r) {
  bool ok = true;
  int m = static_cast<int>(p.inputs(q).size());
  for_each_args(sizes_of(p, a, r), [&](const std::vector<int>& z) {
    if (!ok) return;
    std::vector<int> inner(z.begin() + i, z.begin() + i + m);
    std::vector<int> outer(z.begin(), z.begin() + i);
    outer.push_back(apply(p, a, q, inner));
    outer.insert(outer.end(), z.begin() + i + m, z.end());
    ok = apply(p, a, r, z) == apply(p, a, o, outer);
  });
  return ok;
}

}  // namespace detail

inline std::optional<std::string> check_algebra(const FiniteOperad& p, const FinSetAlgebra& a) {
  if (static_cast<int>(a.carrier.size()) != p.num_colors() || static_cast<int>(a.action.size()) != p.num_ops())
    return "size mismatch";
  for (int o = 0; o < p.num_ops(); ++o) {
    if (a.action[o].size() != table_size(p, a, o)) return "table size at " + p.op_name(o);
    for (int v : a.action[o])
      if (v < 0 || v >= a.carrier[p.output(o)]) return "value out of range at " + p.op_name(o);
  }
  for (int c = 0; c < p.num_colors(); ++c)
    for (int x = 0; x < a.carrier[c]; ++x)
      if (apply(p, a, p.unit(c), {x}) != x) return "unit not identity at " + p.color_name(c);
  for (auto& [k, r] : p.act_table())
    if (!detail::act_holds(p, a, k.first, k.second, r)) return "not equivariant at " + p.op_name(k.first);
  for (auto& [k, r] : p.comp_table()) {
    auto [o, i, q] = k;
    if (!detail::comp_holds(p, a, o, i, q, r)) return "not associative at " + p.op_name(o) + " o_" + std::to_string(i) + " " + p.op_name(q);
  }
  return std::nullopt;
}

// All algebras with carriers of size 1..bound, by backtracking over whole
// action tables in operation order; each constraint is checked as soon as all
// the operations it mentions are assigned. Throws past `cap` search nodes.
inline std::vector<FinSetAlgebra> enumerate_algebras(const FiniteOperad& p, int bound, std::size_t cap = 2000000) {
  if (bound < 1) throw Error("carrier bound must be positive");
  int n = p.num_ops();
  std::vector<char> is_unit(n, 0);
  for (int c = 0; c < p.num_colors(); ++c) is_unit[p.unit(c)] = 1;
  // constraints keyed by the largest operation they mention
  std::vector<std::vector<std::function<bool(const FinSetAlgebra&)>>> cons(n);
  for (auto& [k, r] : p.act_table()) {
    int o = k.first;
    Perm s = k.second;
    int rr = r;
    cons[std::max(o, rr)].push_back([&p, o, s, rr](const FinSetAlgebra& a) { return detail::act_holds(p, a, o, s, rr); });
  }
  for (auto& [k, r] : p.comp_table()) {
    auto [o, i, q] = k;
    int rr = r;
    cons[std::max({o, q, rr})].push_back(
        [&p, o, i, q, rr](const FinSetAlgebra& a) { return detail::comp_holds(p, a, o, i, q, rr); });
  }
  std::vector<FinSetAlgebra> out;
  std::size_t nodes = 0;
  FinSetAlgebra a{std::vector<int>(p.num_colors(), 1), std::vector<std::vector<int>>(n)};
  std::function<void(int)> rec = [&](int o) {
    if (++nodes > cap) throw Error("algebra enumeration exceeds the search cap");
    if (o == n) {
      out.push_back(a);
      return;
    }
    std::size_t sz = table_size(p, a, o);
    int outc = a.carrier[p.output(o)];
    auto& t = a.action[o];
    auto check = [&]() {
      for (auto& c : cons[o])
        if (!c(a)) return false;
      return true;
    };
    if (is_unit[o]) {
      t.resize(sz);
      for (std::size_t x = 0; x < sz; ++x) t[x] = static_cast<int>(x);
      if (check()) rec(o + 1);
      return;
    }
    t.assign(sz, 0);
    while (true) {
      if (check()) rec(o + 1);
      std::size_t j = sz;
      while (j > 0 && ++t[j - 1] == outc) t[--j] = 0;
      if (j == 0) break;
    }
  };
  std::function<void(int)> carriers = [&](int c) {
    if (c == p.num_colors()) {
      rec(0);
      return;
    }
    for (int s = 1; s <= bound; ++s) {
      a.carrier[c] = s;
      carriers(c + 1);
    }
  };
  carriers(0);
  return out;
}

inline bool is_bijective_action(const FiniteOperad& p, const FinSetAlgebra& a, int f) {
  int s = a.carrier[p.inputs(f)[0]], t = a.carrier[p.output(f)];
  if (s != t) return false;
  std::set<int> img(a.action[f].begin(), a.action[f].end());
  return static_cast<int>(img.size()) == t;
}

inline bool is_locally_constant(const FiniteOperad& p, const FinSetAlgebra& a, const std::vector<int>& s) {
  for (int f : s)
    if (p.inputs(f).size() != 1) throw Error("operation " + p.op_name(f) + " is not unary");
  for (int f : s)
    if (!is_bijective_action(p, a, f)) return false;
  return true;
}

// Transport of an algebra along bijections of its carriers.
inline FinSetAlgebra relabel_algebra(const FiniteOperad& p, const FinSetAlgebra& a, const std::vector<Perm>& bij) {
  FinSetAlgebra b{a.carrier, std::vector<std::vector<int>>(a.action.size())};
  for (int o = 0; o < p.num_ops(); ++o) {
    b.action[o].resize(a.action[o].size());
    auto sizes = detail::sizes_of(p, a, o);
    const auto& in = p.inputs(o);
    detail::for_each_args(sizes, [&](const std::vector<int>& x) {
      std::vector<int> y(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) y[j] = bij[in[j]][x[j]];
      b.action[o][table_index(p, b, o, y)] = bij[p.output(o)][apply(p, a, o, x)];
    });
  }
  return b;
}

// ---------------------------------------------------------------- S_{/X}

// r_f : (η, d_root(f)) -> (C_1, f) over X, the root inclusion.
template <DendroidalSetLike X>
struct RootArrow {
  TreeMorphism incl;
  typename X::Dendrex source;
  typename X::Dendrex target;
};

inline TreeRef corolla_one() {
  static const TreeRef c1 = make_ref(canonical_tree(Tree::corolla(1)));
  return c1;
}

template <DendroidalSetLike X>
RootArrow<X> build_r_f(const X& x, const typename X::Dendrex& f) {
  auto c1 = corolla_one();
  auto eta = make_ref(Tree::eta(c1->name(c1->root())));
  auto incl = morphism_by_names(eta, c1, {});
  return {incl, x.act(incl, f), f};
}

template <DendroidalSetLike X>
std::vector<RootArrow<X>> s_over(const X& x, const std::vector<typename X::Dendrex>& s) {
  std::vector<RootArrow<X>> out;
  for (auto& f : s) out.push_back(build_r_f(x, f));
  return out;
}

}  // namespace dendro
