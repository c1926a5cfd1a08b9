// Acceptance gate: one PASS/FAIL line per criterion. All criteria are exact
// (tolerance 0); the bounds below are the pinned instance sizes.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace dendro;
using namespace dendro::suites;

namespace {

constexpr int kTolerance = 0;  // mismatches allowed, for every criterion

struct Line {
  int id;
  std::string title;
  bool ok;
  std::string detail;
  double seconds;
};

std::string brief(const json& info) {
  std::string s;
  for (auto& [k, v] : info.items()) {
    if (v.is_array() || v.is_object()) continue;
    if (!s.empty()) s += ", ";
    s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return s;
}

Line from(int id, const std::string& title, const Check& c) {
  std::string d = brief(c.info);
  if (!c.ok) d += "; first failure: " + c.witness;
  return {id, title, c.ok, d, c.seconds};
}

}  // namespace

int main() {
  static_assert(kTolerance == 0);
  std::vector<Line> lines;
  auto emit = [&](Line l) {
    std::printf("%s %2d %-40s %6.2fs  %s\n", l.ok ? "PASS" : "FAIL", l.id, l.title.c_str(), l.seconds, l.detail.c_str());
    std::fflush(stdout);
    lines.push_back(std::move(l));
  };

  emit(from(1, "subtree/operation correspondence", timed([] { return subtree_correspondence(5, 3); })));
  emit(from(2, "dendroidal generation", timed([] { return factorization(4, 3); })));
  {
    auto t0 = std::chrono::steady_clock::now();
    auto f = forests_suite_at(6, 5);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto l3 = from(3, "wideness lemma", f[0]);
    l3.seconds = s;
    l3.detail += "; without stumps: " + f[1].info["agree"].dump() + "/" + f[1].info["independent_maps"].dump() +
                 " agree (" + (f[1].ok ? "pass" : "fail") + ")";
    emit(l3);
    auto l4 = from(4, "generation of wide independent maps", f[2]);
    l4.seconds = 0;
    emit(l4);
  }
  emit(from(5, "sigma-freeness", timed([] { return sigma_freeness(4, 3, 2); })));
  emit(from(6, "root functor core", timed([] { return root_core(5, 2, 2); })));
  emit(from(7, "naturality", timed([] { return naturality(3, 2, 2); })));
  emit(from(8, "strict Segal", timed([] { return strict_segal(4, 2); })));
  emit(from(9, "simplicial specialization", timed([] { return last_vertex_agreement(3); })));
  {
    auto a = timed([] { return tensor_objects(2, 8); });
    auto b = timed([] { return interchange_figure(4); });
    auto c = timed([] { return tensor_nerves(2, 8); });
    Line l{10, "BV tensor", a.ok && b.ok && c.ok,
           "objects: " + brief(a.info) + "; figure: " + brief(b.info) + "; nerves: " + brief(c.info),
           a.seconds + b.seconds + c.seconds};
    for (auto* x : {&a, &b, &c})
      if (!x->ok) l.detail += "; first failure: " + x->witness;
    emit(l);
  }
  {
    auto full = timed([] { return decalage_axioms(3, 2, false); });
    auto wide = timed([] { return decalage_axioms(3, 2, true); });
    auto el = timed([] { return decalage_elements(3, 2); });
    Line l{11, "decalage", full.ok && el.ok, "axioms: " + brief(full.info) + "; elements: " + brief(el.info),
           full.seconds + wide.seconds + el.seconds};
    if (!full.ok) l.detail += "; first failure: " + full.witness;
    if (!el.ok) l.detail += "; elements failure: " + el.witness;
    l.detail += std::string("; restricted to wide maps: ") + (wide.ok ? "all axioms pass" : "fails: " + wide.witness);
    emit(l);
  }
  emit(from(12, "nerve rigidity", timed([] { return nerve_horns(4, 2); })));
  emit(from(13, "locally constant layer", timed([] { return locally_constant_layer(3); })));

  int passed = 0;
  for (auto& l : lines) passed += l.ok;
  std::printf("%d/%zu criteria pass\n", passed, lines.size());
  return passed == static_cast<int>(lines.size()) ? 0 : 1;
}
