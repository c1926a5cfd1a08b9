// dendro: command-line front end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "suites.hpp"

using namespace dendro;

namespace {

constexpr int kDefaultBound = 5;
constexpr int kMaxBound = 6;

struct Config {
  std::string format = "text";
  int bound = -1;  // unset
  int resolved_bound() const {
    int k = bound;
    if (k <= 0)
      if (const char* e = std::getenv("DENDRO_BOUND")) {
        try {
          k = std::stoi(e);
        } catch (const std::exception&) {
          throw Error("DENDRO_BOUND is not a number");
        }
        if (k <= 0) throw Error("DENDRO_BOUND must be positive");
      }
    if (k <= 0) k = kDefaultBound;
    return k;
  }
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

bool looks_like_file(const std::string& s) {
  return s.size() > 5 && s.substr(s.size() - 5) == ".json";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string x;
  while (std::getline(ss, x, ','))
    if (!x.empty()) out.push_back(x);
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int edge_of(const Tree& t, const std::string& n) {
  if (!t.has_edge(n)) throw Error("no edge '" + n + "' in " + t.str());
  return t.edge(n);
}

// ---------------------------------------------------------------- parse / export

int cmd_parse(const Config& cfg, const std::string& text) {
  Tree t = parse_tree(text);
  if (cfg.format == "json") {
    json j{{"schema", kSchema}};
    j.update(tree_json(t));
    print(j);
  } else if (cfg.format == "dot") {
    std::cout << tree_dot(t);
  } else {
    std::cout << t.str() << "\n"
              << "edges " << t.size() << ", vertices " << t.num_vertices() << ", leaves " << t.leaves().size()
              << ", inner edges " << t.inner_edges().size() << "\n"
              << "canonical " << canonical_tree(t).str() << "\n";
  }
  return 0;
}

template <class E>
json elements_json(const E& e, int max_arity) {
  json objs = json::array(), ops = json::array();
  for (int c = 0; c < e.num_colors(); ++c) objs.push_back({{"id", c}, {"tree", e.tree_of(c)->str()}, {"dendrex", e.base().show(*e.tree_of(c), e.object(c).alpha)}});
  for (int c = 0; c < e.num_colors(); ++c)
    for (int n = 0; n <= max_arity; ++n)
      for (auto& o : e.ops_into(c, n)) {
        json maps = json::array();
        for (std::size_t i = 0; i < o.in.size(); ++i) {
          json m = json::object();
          const Tree& s = *e.tree_of(o.in[i]);
          for (int x = 0; x < static_cast<int>(s.size()); ++x) m[s.name(x)] = e.tree_of(o.out)->name(o.maps[i][x]);
          maps.push_back(m);
        }
        ops.push_back({{"inputs", o.in}, {"output", o.out}, {"maps", maps}});
      }
  return {{"schema", kSchema}, {"max_vertices", e.max_vertices()}, {"max_arity", e.max_arity()},
          {"objects", objs}, {"operations", ops}};
}

template <class E>
std::string elements_dot(const E& e, int max_arity) {
  std::ostringstream o;
  o << "digraph elements {\n";
  for (int c = 0; c < e.num_colors(); ++c) o << "  " << c << " [label=" << dot_quote(e.color_name(c)) << "];\n";
  int k = 0;
  for (int c = 0; c < e.num_colors(); ++c)
    for (int n = 0; n <= max_arity; ++n)
      for (auto& op : e.ops_into(c, n)) {
        if (n == 1 && op == e.unit(c)) continue;
        std::string node = "op" + std::to_string(k++);
        o << "  " << node << " [label=\"\", shape=point];\n";
        for (std::size_t i = 0; i < op.in.size(); ++i) o << "  " << op.in[i] << " -> " << node << " [label=\"" << i << "\"];\n";
        o << "  " << node << " -> " << op.out << ";\n";
      }
  o << "}\n";
  return o.str();
}

int cmd_export(const Config& cfg, const std::string& kind, const std::string& arg) {
  bool dot = cfg.format == "dot";
  if (kind == "tree") {
    Tree t = parse_tree(arg);
    if (dot) std::cout << tree_dot(t);
    else {
      json j{{"schema", kSchema}};
      j.update(tree_json(t));
      print(j);
    }
  } else if (kind == "operad" || kind == "free") {
    FiniteOperad p = kind == "operad" ? operad_from_json(load_json(arg)) : suites::free_finite(parse_tree(arg));
    if (dot) std::cout << operad_dot(p);
    else print(operad_json(p));
  } else if (kind == "elements") {
    auto e = elements_of_tree(make_ref(parse_tree(arg)), cfg.resolved_bound(), 2);
    if (dot) std::cout << elements_dot(e, 2);
    else print(elements_json(e, 2));
  } else {
    throw Error("cannot export '" + kind + "' (expected tree, operad, free or elements)");
  }
  return 0;
}

// ---------------------------------------------------------------- nerve / horn / localize

Nerve<FiniteOperad>::Dendrex dendrex_from_json(const FiniteOperad& p, const Tree& t, const json& j) {
  Nerve<FiniteOperad>::Dendrex d{std::vector<int>(t.size(), -1), std::vector<int>(t.size(), -1)};
  for (auto& [e, c] : j.at("colors").items()) {
    auto k = p.find_color(c.get<std::string>());
    if (!k) throw Error("unknown object " + c.dump());
    d.colors[edge_of(t, e)] = *k;
  }
  for (int e = 0; e < static_cast<int>(t.size()); ++e)
    if (d.colors[e] < 0) throw Error("no color for edge " + t.name(e));
  for (int e = 0; e < static_cast<int>(t.size()); ++e)
    if (!t.has_vertex(e)) d.ops[e] = p.unit(d.colors[e]);
  if (j.contains("operations"))
    for (auto& [e, o] : j["operations"].items()) {
      auto k = p.find_op(o.get<std::string>());
      if (!k) throw Error("unknown operation " + o.dump());
      d.ops[edge_of(t, e)] = *k;
    }
  for (int e : t.vertex_edges()) {
    if (d.ops[e] < 0) throw Error("no operation at vertex " + t.name(e));
    std::vector<int> in;
    for (int k : t.kids(e)) in.push_back(d.colors[k]);
    if (p.inputs(d.ops[e]) != in || p.output(d.ops[e]) != d.colors[e]) throw Error("operation at " + t.name(e) + " has the wrong signature");
  }
  return d;
}

json dendrex_to_json(const FiniteOperad& p, const Tree& t, const Nerve<FiniteOperad>::Dendrex& d) {
  json cols = json::object(), ops = json::object();
  for (int e = 0; e < static_cast<int>(t.size()); ++e) cols[t.name(e)] = p.color_name(d.colors[e]);
  for (int e : t.vertex_edges()) ops[t.name(e)] = p.op_name(d.ops[e]);
  return {{"colors", cols}, {"operations", ops}};
}

int cmd_nerve(const Config& cfg, const std::string& file, const std::string& tree, bool count) {
  auto p = operad_from_json(load_json(file));
  auto t = make_ref(parse_tree(tree));
  Nerve<FiniteOperad> n(p);
  auto ds = n.dendrices(*t);
  if (cfg.format == "json") {
    json arr = json::array();
    if (!count)
      for (auto& d : ds) arr.push_back(dendrex_to_json(p, *t, d));
    json j{{"schema", kSchema}, {"tree", t->str()}, {"count", ds.size()}};
    if (!count) j["dendrices"] = arr;
    print(j);
  } else {
    std::cout << ds.size() << " dendrices at " << t->str() << "\n";
    if (!count)
      for (auto& d : ds) std::cout << "  " << n.show(*t, d) << "\n";
  }
  return 0;
}

template <DendroidalSetLike X>
json horn_survey(const X& x, const TreeRef& t, int omitted, bool inner) {
  std::map<std::size_t, std::size_t> hist;
  std::size_t fams = 0;
  for_each_horn_family(x, t, omitted, inner, [&](const std::vector<typename X::Dendrex>& fam) {
    ++fams;
    ++hist[solve_inner_horn(x, HornProblem<X>{t, omitted, inner, fam}).size()];
  });
  json h = json::object();
  for (auto& [k, v] : hist) h[std::to_string(k)] = v;
  return {{"families", fams}, {"fillers", h}};
}

int cmd_horn(const Config& cfg, const std::string& tree, const std::string& inner_edge, const std::string& vertex,
             const std::string& operad, const std::string& family) {
  if (inner_edge.empty() == vertex.empty()) throw Error("give exactly one of --inner-edge and --vertex");
  auto t = make_ref(parse_tree(tree));
  bool inner = !inner_edge.empty();
  int omitted = edge_of(*t, inner ? inner_edge : vertex);
  auto faces = horn_faces(t, omitted, inner);
  json j{{"schema", kSchema}, {"tree", t->str()}, {"horn", inner ? "inner" : "outer"}, {"omitted", t->name(omitted)},
         {"faces", faces.size()}};
  if (operad.empty()) {
    if (!family.empty()) throw Error("--family needs --operad");
    j["backend"] = "representable";
    j.update(horn_survey(representable(t), t, omitted, inner));
  } else {
    auto p = operad_from_json(load_json(operad));
    Nerve<FiniteOperad> n(p);
    j["backend"] = "nerve";
    if (family.empty()) {
      j.update(horn_survey(n, t, omitted, inner));
    } else {
      auto f = load_json(family);
      check_schema(f);
      const auto& arr = f.at("faces");
      if (arr.size() != faces.size()) throw Error("the horn has " + std::to_string(faces.size()) + " faces");
      HornProblem<Nerve<FiniteOperad>> pb{t, omitted, inner, {}};
      for (std::size_t i = 0; i < faces.size(); ++i) pb.family.push_back(dendrex_from_json(p, *faces[i].map.src, arr[i]));
      json fill = json::array();
      for (auto& d : solve_inner_horn(n, pb)) fill.push_back(dendrex_to_json(p, *t, d));
      j["fillers"] = fill;
    }
  }
  if (cfg.format == "json") print(j);
  else {
    std::cout << j["horn"].get<std::string>() << " horn of " << t->str() << " at " << t->name(omitted) << ", "
              << faces.size() << " faces\n";
    for (std::size_t i = 0; i < faces.size(); ++i) std::cout << "  face " << i << ": " << faces[i].map.src->str() << "\n";
    if (j.contains("families")) {
      std::cout << j["families"] << " compatible families; fillers per family:";
      for (auto& [k, v] : j["fillers"].items()) std::cout << " " << k << "x" << v;
      std::cout << "\n";
    } else {
      std::cout << j["fillers"].size() << " fillers\n";
    }
  }
  return 0;
}

int cmd_localize(const Config& cfg, const std::string& file, const std::string& arrows) {
  auto j = load_json(file);
  int k = cfg.resolved_bound();
  TruncatedPresheaf x(1, 1);
  std::vector<int> idx;
  auto names = split_list(arrows);
  if (j.contains("operations")) {
    auto p = operad_from_json(j);
    Nerve<FiniteOperad> n(p);
    x = truncate(n, k, 2);
    int c1 = x.shape_of(Tree::corolla(1));
    auto ds = n.dendrices(*x.shapes()[c1]);
    int root = x.shapes()[c1]->root();
    for (auto& a : names) {
      auto o = p.find_op(a);
      if (!o || p.inputs(*o).size() != 1) throw Error("'" + a + "' is not a unary operation");
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (ds[i].ops[root] == *o) idx.push_back(static_cast<int>(i));
    }
  } else {
    x = presheaf_from_json(j);
    int c1 = x.shape_of(Tree::corolla(1));
    for (auto& a : names) {
      const auto& ls = x.labels(c1);
      auto it = std::find(ls.begin(), ls.end(), a);
      if (it == ls.end()) throw Error("no element '" + a + "' at C_1");
      idx.push_back(static_cast<int>(it - ls.begin()));
    }
  }
  auto l = localize_truncated(x, idx);
  if (cfg.format == "json") {
    print(presheaf_json(l));
    return 0;
  }
  std::cout << "localized at " << idx.size() << " arrows (bound " << x.max_vertices() << ")\n";
  for (int s = 0; s < l.num_shapes(); ++s)
    std::cout << "  " << l.shapes()[s]->str() << ": " << x.count(s) << " -> " << l.count(s) << "\n";
  return 0;
}

// ---------------------------------------------------------------- elements / root

int cmd_elements(const Config& cfg, const std::string& arg, bool count, bool underlying, int max_arity) {
  int k = cfg.resolved_bound();
  auto run = [&](const auto& e) {
    if (count) {
      if (cfg.format == "json") print({{"schema", kSchema}, {"objects", e.num_colors()}, {"iso_classes", e.num_iso_classes()}});
      else std::cout << e.num_colors() << " objects, " << e.num_iso_classes() << " up to isomorphism\n";
      return 0;
    }
    if (underlying) {
      auto c = underlying_category(e);
      json arr = json::array();
      for (auto& a : c.arrows) arr.push_back({{"name", a.name}, {"source", a.src}, {"target", a.tgt}});
      print({{"schema", kSchema}, {"objects", c.objects}, {"arrows", arr}});
      return 0;
    }
    if (cfg.format == "json") print(elements_json(e, max_arity));
    else if (cfg.format == "dot") std::cout << elements_dot(e, max_arity);
    else {
      for (int c = 0; c < e.num_colors(); ++c) std::cout << c << " " << e.color_name(c) << "\n";
      std::size_t n = 0;
      for (int c = 0; c < e.num_colors(); ++c)
        for (int a = 0; a <= max_arity; ++a) n += e.ops_into(c, a).size();
      std::cout << e.num_colors() << " objects, " << n << " operations of arity <= " << max_arity << "\n";
    }
    return 0;
  };
  if (looks_like_file(arg)) return run(NerveElements<FiniteOperad>(Nerve<FiniteOperad>(operad_from_json(load_json(arg))), k, 2));
  return run(elements_of_tree(make_ref(parse_tree(arg)), k, 2));
}

int cmd_root(const Config& cfg, const std::string& arg, bool verify) {
  int k = cfg.resolved_bound();
  if (looks_like_file(arg)) {
    auto p = operad_from_json(load_json(arg));
    NerveElements<FiniteOperad> e(Nerve<FiniteOperad>(p), std::min(k, 3), 2);
    if (verify) {
      auto r = check_root_functor(e, 2);
      json j{{"schema", kSchema}, {"ok", r.ok}, {"operations", r.ops_checked}, {"compositions", r.compositions_checked}};
      if (!r.ok) j["witness"] = r.failure;
      print(j);
      return r.ok ? 0 : 1;
    }
    for (int c = 0; c < e.num_colors(); ++c) std::cout << e.color_name(c) << " -> " << p.color_name(root_object(e, c)) << "\n";
    return 0;
  }
  auto t = make_ref(parse_tree(arg));
  auto e = elements_of_tree(t, std::max(1, std::min(k, t->num_vertices())), 2);
  if (verify) {
    auto r = root_suite(e, std::min(k, 2), 2);
    json j{{"schema", kSchema}, {"tree", t->str()}, {"ok", r.ok}, {"objects", r.objects}, {"operations", r.operations},
           {"interchange_checks", r.interchange_checks}};
    if (!r.ok) j["witness"] = r.failure;
    print(j);
    return r.ok ? 0 : 1;
  }
  for (int c = 0; c < e.num_colors(); ++c) std::cout << e.color_name(c) << " -> " << t->name(root_object(e, c)) << "\n";
  return 0;
}

// ---------------------------------------------------------------- tensor

TensorOperad::Signature parse_signature(const TensorOperad& t, const std::string& s) {
  auto arrow = s.find("->");
  if (arrow == std::string::npos) throw Error("signature needs '->'");
  static const std::regex pair_re(R"(\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\))");
  auto color = [&](const std::smatch& m) {
    auto c = t.left().find_color(m[1]);
    auto y = t.right().find_color(m[2]);
    if (!c || !y) throw Error("unknown pair (" + m[1].str() + "," + m[2].str() + ")");
    return t.pair(*c, *y);
  };
  TensorOperad::Signature sig;
  std::string lhs = s.substr(0, arrow), rhs = s.substr(arrow + 2);
  for (std::sregex_iterator it(lhs.begin(), lhs.end(), pair_re), end; it != end; ++it) sig.in.push_back(color(*it));
  std::smatch m;
  if (!std::regex_search(rhs, m, pair_re)) throw Error("missing output pair");
  sig.out = color(m);
  return sig;
}

int cmd_tensor(const Config& cfg, const std::string& pf, const std::string& qf, int word_bound, const std::string& signature) {
  auto p = looks_like_file(pf) ? operad_from_json(load_json(pf)) : suites::free_finite(parse_tree(pf));
  auto q = looks_like_file(qf) ? operad_from_json(load_json(qf)) : suites::free_finite(parse_tree(qf));
  int arity = 2;
  if (!signature.empty()) arity = std::max<int>(1, static_cast<int>(std::count(signature.begin(), signature.end(), '(')) - 1);
  TensorOperad t(p, q, word_bound, arity);
  json j{{"schema", kSchema}, {"objects", t.num_colors()}, {"word_bound", word_bound}, {"max_arity", arity},
         {"words", t.num_words()}, {"classes", t.num_classes()}, {"frontier_untouched", !t.any_frontier_touched()}};
  if (!signature.empty()) {
    auto sig = parse_signature(t, signature);
    json reps = json::array();
    for (int c : t.classes(sig)) reps.push_back(t.op_name(c));
    j["signature"] = signature;
    j["class_count"] = reps.size();
    j["representatives"] = reps;
    j["signature_frontier_untouched"] = !t.frontier_touched(sig);
  }
  if (cfg.format == "json") {
    print(j);
    return 0;
  }
  std::cout << t.num_colors() << " objects, " << t.num_classes() << " classes from " << t.num_words() << " words (bound "
            << word_bound << ", arity <= " << arity << "), frontier " << (t.any_frontier_touched() ? "touched" : "untouched") << "\n";
  if (!signature.empty()) {
    std::cout << j["class_count"] << " classes at " << signature << "\n";
    for (auto& r : j["representatives"]) std::cout << "  " << r.get<std::string>() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- décalage / algebras

int report_decalage(const Config& cfg, const DecalageReport& r) {
  if (cfg.format == "json") print(decalage_report_json(r));
  else
    for (auto& c : r.checks)
      std::cout << (c.ok ? "pass " : "FAIL ") << c.name << " (" << c.checked << ")" << (c.ok ? "" : ": " + c.witness) << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_algebras(const Config& cfg, const std::string& file, int bound, const std::string& lc, bool list) {
  auto p = looks_like_file(file) ? operad_from_json(load_json(file)) : suites::free_finite(parse_tree(file));
  auto algs = enumerate_algebras(p, bound);
  std::vector<int> s;
  for (auto& n : split_list(lc)) {
    auto o = p.find_op(n);
    if (!o) throw Error("unknown operation '" + n + "'");
    s.push_back(*o);
  }
  std::size_t n_lc = 0;
  json arr = json::array();
  for (auto& a : algs) {
    bool l = is_locally_constant(p, a, s);
    n_lc += l;
    if (list) {
      json x = algebra_json(p, a);
      x.erase("schema");
      x["locally_constant"] = l;
      arr.push_back(x);
    }
  }
  if (cfg.format == "json") {
    json j{{"schema", kSchema}, {"bound", bound}, {"algebras", algs.size()}, {"locally_constant", n_lc}};
    if (list) j["list"] = arr;
    print(j);
  } else {
    std::cout << algs.size() << " algebras with carriers of size <= " << bound << ", " << n_lc << " locally constant";
    if (!s.empty()) std::cout << " for {" << lc << "}";
    std::cout << "\n";
    if (list)
      for (auto& x : arr) std::cout << "  " << x.dump() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& cfg, const std::string& suite, bool timing) {
  int k = cfg.resolved_bound();
  if (k > kMaxBound) throw Error("bound " + std::to_string(k) + " is too large (at most " + std::to_string(kMaxBound) + ")");
  std::vector<std::string> names;
  if (suite == "all") names = suites::suite_names();
  else {
    auto& all = suites::suite_names();
    if (std::find(all.begin(), all.end(), suite) == all.end()) throw Error("unknown suite '" + suite + "'");
    names = {suite};
  }
  json out = json::array();
  bool ok = true;
  for (auto& n : names) {
    auto checks = suites::run_suite(n, k);
    bool sok = true;
    double secs = 0;
    json cs = json::array();
    for (auto& c : checks) {
      if (c.gate) sok = sok && c.ok;
      secs += c.seconds;
      json cj = suites::check_json(c);
      if (timing) cj["seconds"] = c.seconds;
      cs.push_back(cj);
    }
    ok = ok && sok;
    out.push_back({{"suite", n}, {"ok", sok}, {"checks", cs}});
    if (cfg.format == "text") {
      for (auto& c : checks)
        std::cerr << (c.ok ? "pass " : (c.gate ? "FAIL " : "note ")) << n << ": " << c.name
                  << (c.ok ? "" : " - " + c.witness) << "\n";
    }
  }
  print({{"schema", kSchema}, {"bound", k}, {"ok", ok}, {"suites", out}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees, dendroidal sets and operads of elements at bounded size"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));

  std::string text, file, file2, tree, inner_edge, vertex, operad, family, arrows, signature, lc, kind, mode;
  bool count = false, underlying = false, verify_flag = false, wide = false, list = false, timing = false, export_data = false;
  int word_bound = 8, max_arity = 2, alg_bound = 2;
  std::function<int()> action;

  auto bound_opt = [&](CLI::App* s) {
    s->add_option("--bound", cfg.bound, "vertex bound (default 5, or DENDRO_BOUND)")->check(CLI::PositiveNumber);
  };

  auto* parse = app.add_subcommand("parse", "parse a tree");
  parse->add_option("tree", text, "tree, e.g. r[a,b[c]]")->required();
  parse->callback([&] { action = [&] { return cmd_parse(cfg, text); }; });

  auto* nerve = app.add_subcommand("nerve", "dendrices of the nerve of an operad at a tree");
  nerve->add_option("operad", file, "operad JSON")->required();
  nerve->add_option("--tree", tree)->required();
  nerve->add_flag("--count", count, "only count");
  nerve->callback([&] { action = [&] { return cmd_nerve(cfg, file, tree, count); }; });

  auto* horn = app.add_subcommand("horn", "horn filling over a nerve or a representable");
  horn->add_option("--tree", tree)->required();
  horn->add_option("--inner-edge", inner_edge);
  horn->add_option("--vertex", vertex, "external vertex, named by its output edge");
  horn->add_option("--operad", operad, "operad JSON (default: the representable of the tree)");
  horn->add_option("--family", family, "JSON face family to fill");
  horn->callback([&] { action = [&] { return cmd_horn(cfg, tree, inner_edge, vertex, operad, family); }; });

  auto* localize = app.add_subcommand("localize", "invert unary arrows of a truncated presheaf");
  localize->add_option("input", file, "presheaf or operad JSON")->required();
  localize->add_option("--arrows", arrows, "comma-separated arrows")->required();
  bound_opt(localize);
  localize->callback([&] { action = [&] { return cmd_localize(cfg, file, arrows); }; });

  auto* elements = app.add_subcommand("elements", "operad of elements of a tree or of the nerve of an operad");
  elements->add_option("x", text, "tree, or operad JSON")->required();
  elements->add_flag("--count", count);
  elements->add_flag("--underlying", underlying, "underlying category");
  elements->add_option("--max-arity", max_arity, "largest arity listed")->check(CLI::NonNegativeNumber);
  bound_opt(elements);
  elements->callback([&] { action = [&] { return cmd_elements(cfg, text, count, underlying, max_arity); }; });

  auto* root = app.add_subcommand("root", "the root functor");
  root->add_option("x", text, "tree, or operad JSON")->required();
  root->add_flag("--verify", verify_flag);
  bound_opt(root);
  root->callback([&] { action = [&] { return cmd_root(cfg, text, verify_flag); }; });

  auto* tensor = app.add_subcommand("tensor", "Boardman-Vogt tensor product by bounded closure");
  tensor->add_option("P", file, "operad JSON or tree")->required();
  tensor->add_option("Q", file2, "operad JSON or tree")->required();
  tensor->add_option("--bound", word_bound, "word bound")->check(CLI::PositiveNumber);
  tensor->add_option("--signature", signature, "e.g. \"(c1,y1),(c2,y2)->(d,z)\"");
  tensor->callback([&] { action = [&] { return cmd_tensor(cfg, file, file2, word_bound, signature); }; });

  auto* decalage = app.add_subcommand("decalage", "operadic decalage data");
  decalage->require_subcommand(1);
  auto* dv = decalage->add_subcommand("validate", "validate decalage data from JSON");
  dv->add_option("data", file)->required();
  dv->callback([&] { action = [&] { return report_decalage(cfg, validate_decalage(decalage_from_json(load_json(file)))); }; });
  auto* dd = decalage->add_subcommand("dendroidal", "the dendroidal instance on trees within the bound");
  bound_opt(dd);
  dd->add_flag("--wide", wide, "keep only wide maps");
  dd->add_flag("--export", export_data, "print the data as JSON instead of validating");
  dd->callback([&] {
    action = [&] {
      int k = cfg.resolved_bound();
      if (k > 3) throw Error("the dendroidal decalage is limited to bound 3");
      auto d = dendroidal_decalage(k, 2, wide);
      if (export_data) {
        print(decalage_json(d.data));
        return 0;
      }
      return report_decalage(cfg, validate_decalage(d.data));
    };
  });

  auto* algebras = app.add_subcommand("algebras", "algebras in finite sets");
  algebras->add_option("operad", file, "operad JSON or tree")->required();
  algebras->add_option("--bound", alg_bound, "carrier size bound")->check(CLI::PositiveNumber);
  algebras->add_option("--locally-constant", lc, "comma-separated unary operations");
  algebras->add_flag("--list", list);
  algebras->callback([&] { action = [&] { return cmd_algebras(cfg, file, alg_bound, lc, list); }; });

  auto* verify = app.add_subcommand("verify", "run an exhaustive suite");
  verify->add_option("suite", mode, "trees|operads|forests|elements|root|tensor|decalage|algebras|all")->required();
  verify->add_flag("--timing", timing, "include timings in the report");
  bound_opt(verify);
  verify->callback([&] { action = [&] { return cmd_verify(cfg, mode, timing); }; });

  auto* exp = app.add_subcommand("export", "emit JSON or DOT");
  exp->add_option("kind", kind, "tree|operad|free|elements")->required();
  exp->add_option("x", text, "tree or file")->required();
  bound_opt(exp);
  exp->callback([&] {
    action = [&] {
      Config c = cfg;
      if (c.format == "text") c.format = "json";
      return cmd_export(c, kind, text);
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
