#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dendro/algebra.hpp"
#include "dendro/decalage.hpp"
#include "dendro/dendroidal.hpp"
#include "dendro/forest.hpp"
#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dendro/1";

inline void check_schema(const json& j) {
  if (!j.contains("schema") || j["schema"] != kSchema) throw Error("expected a document with \"schema\": \"dendro/1\"");
}

// ---------------------------------------------------------------- trees

inline json tree_json(const Tree& t) {
  json vs = json::array();
  for (auto& [out, in] : t.vertex_list()) vs.push_back({{"out", out}, {"in", in}});
  return {{"root", t.name(t.root())}, {"vertices", vs}};
}

inline Tree tree_from_json(const json& j) {
  Tree::VertexList vs;
  for (auto& v : j.at("vertices")) vs.push_back({v.at("out").get<std::string>(), v.at("in").get<std::vector<std::string>>()});
  return Tree::from_vertices(j.at("root").get<std::string>(), vs);
}

inline std::string dot_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

// One node per edge, one diamond per vertex.
inline std::string tree_dot(const Tree& t) {
  std::ostringstream o;
  o << "digraph tree {\n  rankdir=BT;\n";
  for (int e = 0; e < static_cast<int>(t.size()); ++e) o << "  " << dot_quote("e:" + t.name(e)) << " [label=" << dot_quote(t.name(e)) << ", shape=plaintext];\n";
  for (int e : t.vertex_edges()) {
    std::string v = dot_quote("v:" + t.name(e));
    o << "  " << v << " [label=\"\", shape=diamond];\n";
    for (int k : t.kids(e)) o << "  " << dot_quote("e:" + t.name(k)) << " -> " << v << ";\n";
    o << "  " << v << " -> " << dot_quote("e:" + t.name(e)) << ";\n";
  }
  o << "}\n";
  return o.str();
}

// ---------------------------------------------------------------- operads

inline json operad_json(const FiniteOperad& p) {
  json ops = json::array(), comps = json::array(), sigma = json::array();
  for (int o = 0; o < p.num_ops(); ++o) {
    json in = json::array();
    for (int c : p.inputs(o)) in.push_back(p.color_name(c));
    ops.push_back({{"name", p.op_name(o)}, {"inputs", in}, {"output", p.color_name(p.output(o))}});
  }
  for (auto& [k, r] : p.comp_table()) {
    auto [a, i, b] = k;
    comps.push_back({{"outer", p.op_name(a)}, {"slot", i}, {"inner", p.op_name(b)}, {"result", p.op_name(r)}});
  }
  for (auto& [k, r] : p.act_table()) sigma.push_back({{"op", p.op_name(k.first)}, {"perm", k.second}, {"result", p.op_name(r)}});
  json units = json::object();
  for (int c = 0; c < p.num_colors(); ++c) units[p.color_name(c)] = p.op_name(p.unit(c));
  return {{"schema", kSchema}, {"objects", p.colors()}, {"operations", ops}, {"units", units},
          {"compositions", comps}, {"sigma", sigma}};
}

// Units may be given under "units" or as operations named id_<color>; missing
// ones are added. Axioms are validated on load.
inline FiniteOperad operad_from_json(const json& j) {
  check_schema(j);
  FiniteOperad p;
  for (auto& c : j.at("objects")) p.add_color(c.get<std::string>());
  auto color = [&](const json& n) {
    auto c = p.find_color(n.get<std::string>());
    if (!c) throw Error("unknown object " + n.dump());
    return *c;
  };
  auto op = [&](const json& n) {
    auto o = p.find_op(n.get<std::string>());
    if (!o) throw Error("unknown operation " + n.dump());
    return *o;
  };
  for (auto& o : j.at("operations")) {
    std::vector<int> in;
    for (auto& c : o.at("inputs")) in.push_back(color(c));
    p.add_op(o.at("name").get<std::string>(), in, color(o.at("output")));
  }
  if (j.contains("units")) {
    for (auto& [c, o] : j["units"].items()) p.set_unit(color(json(c)), op(o));
  } else {
    for (int c = 0; c < p.num_colors(); ++c) {
      auto o = p.find_op("id_" + p.color_name(c));
      if (o && p.inputs(*o) == std::vector<int>{c} && p.output(*o) == c) p.set_unit(c, *o);
    }
  }
  p.add_missing_units();
  if (j.contains("compositions"))
    for (auto& c : j["compositions"]) p.set_comp(op(c.at("outer")), c.at("slot").get<int>(), op(c.at("inner")), op(c.at("result")));
  if (j.contains("sigma"))
    for (auto& s : j["sigma"]) p.set_act(op(s.at("op")), s.at("perm").get<Perm>(), op(s.at("result")));
  p.validate();
  return p;
}

// Colors as ellipses, operations as boxes with numbered input edges.
inline std::string operad_dot(const FiniteOperad& p) {
  std::ostringstream o;
  o << "digraph operad {\n";
  for (int c = 0; c < p.num_colors(); ++c) o << "  " << dot_quote("c:" + p.color_name(c)) << " [label=" << dot_quote(p.color_name(c)) << "];\n";
  for (int k = 0; k < p.num_ops(); ++k) {
    if (k == p.unit(p.output(k))) continue;
    std::string n = dot_quote("o:" + p.op_name(k));
    o << "  " << n << " [label=" << dot_quote(p.op_name(k)) << ", shape=box];\n";
    const auto& in = p.inputs(k);
    for (std::size_t j = 0; j < in.size(); ++j)
      o << "  " << dot_quote("c:" + p.color_name(in[j])) << " -> " << n << " [label=\"" << j << "\"];\n";
    o << "  " << n << " -> " << dot_quote("c:" + p.color_name(p.output(k))) << ";\n";
  }
  o << "}\n";
  return o.str();
}

// ---------------------------------------------------------------- truncated presheaves

inline json presheaf_json(const TruncatedPresheaf& x) {
  json shapes = json::array(), actions = json::array();
  for (int s = 0; s < x.num_shapes(); ++s) shapes.push_back({{"tree", x.shapes()[s]->str()}, {"elements", x.labels(s)}});
  for (auto& [k, v] : x.actions()) {
    auto& [s, t, m] = k;
    actions.push_back({{"source", s}, {"target", t}, {"map", m}, {"values", v}});
  }
  return {{"schema", kSchema}, {"max_vertices", x.max_vertices()}, {"max_arity", x.max_arity()},
          {"shapes", shapes}, {"actions", actions}};
}

// Shapes are listed in the canonical enumeration order; "source"/"target" are
// shape indices and "map" sends source edges (preorder) to target edges.
inline TruncatedPresheaf presheaf_from_json(const json& j) {
  check_schema(j);
  TruncatedPresheaf x(j.at("max_vertices").get<int>(), j.at("max_arity").get<int>());
  const auto& shapes = j.at("shapes");
  if (static_cast<int>(shapes.size()) != x.num_shapes()) throw Error("shape list does not match the bound");
  for (int s = 0; s < x.num_shapes(); ++s) {
    if (shapes[s].at("tree").get<std::string>() != x.shapes()[s]->str())
      throw Error("shape " + std::to_string(s) + " is not " + x.shapes()[s]->str());
    x.set_labels(s, shapes[s].at("elements").get<std::vector<std::string>>());
  }
  for (auto& a : j.at("actions"))
    x.set_action(a.at("source").get<int>(), a.at("target").get<int>(), a.at("map").get<std::vector<int>>(),
                 a.at("values").get<std::vector<int>>());
  if (auto e = x.validate()) throw Error(*e);
  return x;
}

// ---------------------------------------------------------------- forest morphisms

inline json forest_morphism_json(const ForestMorphism& f) {
  json maps = json::array();
  for (std::size_t i = 0; i < f.maps.size(); ++i) {
    json m = json::object();
    const auto& g = f.maps[i];
    for (std::size_t e = 0; e < g.map.size(); ++e) m[g.src->name(static_cast<int>(e))] = g.tgt->name(g.map[e]);
    maps.push_back(m);
  }
  return {{"schema", kSchema}, {"source", f.src.str()}, {"target", f.tgt.str()}, {"alpha", f.alpha}, {"edge_maps", maps}};
}

inline ForestMorphism forest_morphism_from_json(const json& j) {
  check_schema(j);
  ForestMorphism f{parse_forest(j.at("source").get<std::string>()), parse_forest(j.at("target").get<std::string>()),
                   j.at("alpha").get<std::vector<int>>(), {}};
  const auto& maps = j.at("edge_maps");
  if (maps.size() != f.src.size() || f.alpha.size() != f.src.size()) throw Error("one edge map per source tree expected");
  for (std::size_t i = 0; i < f.src.size(); ++i) {
    if (f.alpha[i] < 0 || f.alpha[i] >= static_cast<int>(f.tgt.size())) throw Error("alpha out of range");
    std::map<std::string, std::string> names;
    for (auto& [k, v] : maps[i].items()) names[k] = v.get<std::string>();
    f.maps.push_back(morphism_by_names(f.src.trees[i], f.tgt.trees[f.alpha[i]], names));
  }
  if (!is_valid(f)) throw Error("edge maps do not define tree morphisms");
  return f;
}

// ---------------------------------------------------------------- algebras

inline json algebra_json(const FiniteOperad& p, const FinSetAlgebra& a) {
  json car = json::object(), acts = json::array();
  for (int c = 0; c < p.num_colors(); ++c) car[p.color_name(c)] = a.carrier[c];
  for (int o = 0; o < p.num_ops(); ++o) acts.push_back({{"operation", p.op_name(o)}, {"table", a.action[o]}});
  return {{"schema", kSchema}, {"carriers", car}, {"actions", acts}};
}

inline FinSetAlgebra algebra_from_json(const FiniteOperad& p, const json& j) {
  check_schema(j);
  FinSetAlgebra a{std::vector<int>(p.num_colors(), 0), std::vector<std::vector<int>>(p.num_ops())};
  for (auto& [c, n] : j.at("carriers").items()) {
    auto k = p.find_color(c);
    if (!k) throw Error("unknown object " + c);
    a.carrier[*k] = n.get<int>();
  }
  for (auto& t : j.at("actions")) {
    auto o = p.find_op(t.at("operation").get<std::string>());
    if (!o) throw Error("unknown operation " + t.at("operation").dump());
    a.action[*o] = t.at("table").get<std::vector<int>>();
  }
  for (int c = 0; c < p.num_colors(); ++c)  // units may be omitted
    if (a.action[p.unit(c)].empty())
      for (int x = 0; x < a.carrier[c]; ++x) a.action[p.unit(c)].push_back(x);
  if (auto e = check_algebra(p, a)) throw Error(*e);
  return a;
}

// ---------------------------------------------------------------- décalage data

// Arrows and objects are referred to by name. "functor" gives Ω on each arrow
// as lists of target object / operation names indexed like the source operad.
// "D" maps every object (and arrow) of A; an arrow with no D image is null.
inline json decalage_json(const DecalageData& d) {
  json arrows = json::array(), comps = json::array(), ops = json::object(), fun = json::object(), roots = json::object();
  json dobj = json::object(), darr = json::object(), iota = json::object(), gamma = json::object(), ids = json::object();
  auto an = [&](int f) { return d.arrows[f].name; };
  for (auto& a : d.arrows) arrows.push_back({{"name", a.name}, {"source", d.objects[a.src]}, {"target", d.objects[a.tgt]}});
  for (int f = 0; f < static_cast<int>(d.arrows.size()); ++f)
    for (int g = 0; g < static_cast<int>(d.arrows.size()); ++g)
      if (d.arrows[f].tgt == d.arrows[g].src) {
        int h = d.compose(g, f);
        if (h >= 0) comps.push_back({{"first", an(f)}, {"second", an(g)}, {"result", an(h)}});
      }
  for (std::size_t a = 0; a < d.objects.size(); ++a) {
    ids[d.objects[a]] = an(d.identity[a]);
    json pj = operad_json(d.omega[a]);
    pj.erase("schema");
    ops[d.objects[a]] = pj;
  }
  for (int f = 0; f < static_cast<int>(d.arrows.size()); ++f) {
    const auto& m = d.omega_map[f];
    const auto& q = d.omega[d.arrows[f].tgt];
    json objs = json::array(), os = json::array();
    for (int c : m.on_objects) objs.push_back(q.color_name(c));
    for (int o : m.on_ops) os.push_back(q.op_name(o));
    fun[an(f)] = {{"objects", objs}, {"operations", os}};
  }
  for (int a = 0; a < d.num_domain_objects; ++a) {
    roots[d.objects[a]] = d.root[a] < 0 ? json(nullptr) : json(d.omega[a].color_name(d.root[a]));
    dobj[d.objects[a]] = d.objects[d.D_obj[a]];
    iota[d.objects[a]] = an(d.iota[a]);
    gamma[d.objects[a]] = an(d.gamma[a]);
  }
  for (int f = 0; f < static_cast<int>(d.arrows.size()); ++f)
    if (d.arrow_in_domain(f)) darr[an(f)] = d.D_arr[f] < 0 ? json(nullptr) : json(an(d.D_arr[f]));
  json domain = json::array();
  for (int a = 0; a < d.num_domain_objects; ++a) domain.push_back(d.objects[a]);
  return {{"schema", kSchema}, {"objects", d.objects}, {"domain", domain}, {"arrows", arrows}, {"identities", ids},
          {"compositions", comps}, {"operads", ops}, {"functor", fun}, {"roots", roots}, {"omega", d.objects[d.w]},
          {"D", {{"objects", dobj}, {"arrows", darr}}}, {"iota", iota}, {"gamma", gamma}};
}

inline DecalageData decalage_from_json(const json& j) {
  check_schema(j);
  DecalageData d;
  std::map<std::string, int> obj, arr;
  // domain objects first
  std::vector<std::string> all = j.at("objects").get<std::vector<std::string>>();
  std::vector<std::string> dom = j.contains("domain") ? j["domain"].get<std::vector<std::string>>() : all;
  for (auto& o : dom) obj.emplace(o, static_cast<int>(obj.size()));
  for (auto& o : all)
    if (!obj.count(o)) obj.emplace(o, static_cast<int>(obj.size()));
  if (obj.size() != all.size()) throw Error("domain objects must be objects");
  d.objects.resize(obj.size());
  for (auto& [n, i] : obj) d.objects[i] = n;
  d.num_domain_objects = static_cast<int>(dom.size());
  auto o_at = [&](const json& n) {
    auto it = obj.find(n.get<std::string>());
    if (it == obj.end()) throw Error("unknown object " + n.dump());
    return it->second;
  };
  for (auto& a : j.at("arrows")) {
    std::string n = a.at("name").get<std::string>();
    if (arr.count(n)) throw Error("duplicate arrow " + n);
    arr[n] = static_cast<int>(d.arrows.size());
    d.arrows.push_back({n, o_at(a.at("source")), o_at(a.at("target"))});
  }
  auto a_at = [&](const json& n) {
    auto it = arr.find(n.get<std::string>());
    if (it == arr.end()) throw Error("unknown arrow " + n.dump());
    return it->second;
  };
  d.identity.assign(d.objects.size(), -1);
  for (auto& [o, f] : j.at("identities").items()) d.identity[o_at(json(o))] = a_at(f);
  for (int a = 0; a < static_cast<int>(d.objects.size()); ++a)
    if (d.identity[a] < 0) throw Error("missing identity at " + d.objects[a]);
  auto comp = std::make_shared<std::map<std::pair<int, int>, int>>();
  for (auto& c : j.at("compositions")) (*comp)[{a_at(c.at("second")), a_at(c.at("first"))}] = a_at(c.at("result"));
  auto ids = d.identity;
  auto arrows = d.arrows;
  d.compose = [comp, ids, arrows](int g, int f) {
    if (arrows[f].tgt != arrows[g].src) return -1;
    if (g == ids[arrows[g].src]) return f;
    if (f == ids[arrows[f].src]) return g;
    auto it = comp->find({g, f});
    return it == comp->end() ? -1 : it->second;
  };
  for (auto& n : d.objects) {
    json pj = j.at("operads").at(n);
    pj["schema"] = kSchema;
    d.omega.push_back(operad_from_json(pj));
  }
  for (auto& a : d.arrows) {
    const auto& m = j.at("functor").at(a.name);
    const auto& q = d.omega[a.tgt];
    OperadMorphism om;
    for (auto& c : m.at("objects")) {
      auto k = q.find_color(c.get<std::string>());
      if (!k) throw Error("unknown object " + c.dump() + " in functor at " + a.name);
      om.on_objects.push_back(*k);
    }
    for (auto& o : m.at("operations")) {
      auto k = q.find_op(o.get<std::string>());
      if (!k) throw Error("unknown operation " + o.dump() + " in functor at " + a.name);
      om.on_ops.push_back(*k);
    }
    d.omega_map.push_back(om);
  }
  d.w = o_at(j.at("omega"));
  int n = d.num_domain_objects;
  d.root.assign(n, -1);
  d.D_obj.assign(n, -1);
  d.iota.assign(n, -1);
  d.gamma.assign(n, -1);
  d.D_arr.assign(d.arrows.size(), -1);
  for (int a = 0; a < n; ++a) {
    const auto& nm = d.objects[a];
    const auto& r = j.at("roots").at(nm);
    if (!r.is_null()) {
      auto k = d.omega[a].find_color(r.get<std::string>());
      if (!k) throw Error("unknown root at " + nm);
      d.root[a] = *k;
    }
    d.D_obj[a] = o_at(j.at("D").at("objects").at(nm));
    d.iota[a] = a_at(j.at("iota").at(nm));
    d.gamma[a] = a_at(j.at("gamma").at(nm));
  }
  for (auto& [f, g] : j.at("D").at("arrows").items())
    if (!g.is_null()) d.D_arr[a_at(json(f))] = a_at(g);
  return d;
}

// ---------------------------------------------------------------- reports

inline json decalage_report_json(const DecalageReport& r) {
  json checks = json::array();
  for (auto& c : r.checks) {
    json e = {{"name", c.name}, {"ok", c.ok}, {"checked", c.checked}};
    if (!c.ok) e["witness"] = c.witness;
    checks.push_back(e);
  }
  return {{"schema", kSchema}, {"ok", r.ok()}, {"checks", checks}};
}

}  // namespace dendro
