// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace vrc;
using namespace vrc::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
};

std::string str(long k) { return std::to_string(k); }

bool replays(const Verdict& v, const GraphOfGroups* g) { return !replay(v, g); }

Outcome ac1() {
  Outcome o;
  for (long k = -6; k <= 6; ++k) {
    const GraphOfGroups g = gk_encoding(k);
    const Verdict v = decide_vrc(g);
    const bool closed = family_verdicts(Family::GK, k).vrc;
    const std::string tag = "k=" + str(k);
    o.expect(closed == (std::labs(k) <= 1), tag + " closed form");
    o.expect(replays(v, &g), tag + " certificate does not replay");
    if (k == 0) {
      o.expect(v.status == Status::VRC && std::holds_alternative<NLICertificate>(v.certificate),
               tag + " expected VRC via NLI");
    } else if (std::labs(k) == 1) {
      o.expect(v.status == Status::VRC && std::holds_alternative<WitnessVerified>(v.certificate),
               tag + " expected VRC via witness");
    } else {
      o.expect(v.status == Status::NOT_VRC && std::holds_alternative<GramInfeasible>(v.certificate),
               tag + " expected NOT_VRC via Gram");
    }
  }
  o.detail = o.pass ? "13 values, statuses and certificates match |k| <= 1" : o.detail;
  return o;
}

Outcome ac2() {
  Outcome o;
  int settled = 0, cases = 0;
  for (long k = -4; k <= 4; ++k)
    for (long l = -4; l <= 4; ++l) {
      if (k == 0 && l == 0) continue;
      ++cases;
      const std::string tag = "(k,l)=(" + str(k) + "," + str(l) + ")";
      const GraphOfGroups g = gkl_encoding(k, l);
      const Verdict v = decide_vrc(g);
      const bool closed = family_verdicts(Family::GKL, k, l).vrc;
      const bool small = std::labs(k) <= 1 && std::labs(l) <= 1;
      o.expect(closed == small, tag + " closed form");
      o.expect(replays(v, &g), tag + " certificate does not replay");
      if (v.status != Status::UNKNOWN) ++settled;
      o.expect(!(v.status == Status::VRC && !closed), tag + " pipeline VRC contradicts closed form");
      o.expect(!(v.status == Status::NOT_VRC && closed), tag + " pipeline NOT_VRC contradicts closed form");
      if (k != 0 && l != 0 && std::labs(k) != std::labs(l))
        o.expect(v.status == Status::NOT_VRC, tag + " pipeline did not refute");
      const bool merged = v.status == Status::UNKNOWN ? closed : v.status == Status::VRC;
      o.expect(merged == small, tag + " merged verdict");
    }
  if (o.pass)
    o.detail = std::to_string(cases) + " pairs, pipeline settles " + std::to_string(settled) +
               ", no contradiction";
  return o;
}

Outcome ac3() {
  Outcome o;
  for (long k = -6; k <= 6; ++k)
    for (long l = -6; l <= 6; ++l) {
      if (k == 0 || l == 0) continue;
      const std::string tag = "BS(" + str(k) + "," + str(l) + ")";
      const GraphOfGroups g = bs_encoding(k, l);
      const SpanningTree t = canonical_spanning_tree(g.graph);
      const bool balanced = balanced_offtree_cycle(g, t, edge_of(g, "t")).balanced;
      const bool equal = std::labs(k) == std::labs(l);
      o.expect(balanced == equal, tag + " balanced");
      const Verdict v = decide_vrc(g);
      o.expect(v.status == (equal ? Status::VRC : Status::NOT_VRC) && replays(v, &g), tag + " vrc");
      const bool lr = l == k || l == -k;
      const Verdict h = decide_lr_single_hnn(g);
      o.expect(h.status == (lr ? Status::LR : Status::NOT_LR) && replays(h, &g), tag + " lr");
      o.expect(family_verdicts(Family::BS, k, l).lr == lr, tag + " closed-form lr");
      if (lr) {
        const FgAbGroup z = FgAbGroup::free(1);
        const Verdict a = decide_lr_hnn_abelian(z, {AbElement(z, ivec({k}))}, {AbElement(z, ivec({l}))});
        o.expect(a.status == Status::LR && replays(a, nullptr), tag + " hnn-abelian lr");
      }
    }
  if (o.pass) o.detail = "144 pairs: balanced <=> |k|=|l|, LR <=> l=+-k";
  return o;
}

Outcome ac4() {
  Outcome o;
  const GraphOfGroups g = load_graph("ex9.json");
  const Verdict v = decide_vrc(g);
  o.expect(v.status == Status::VRC, "status");
  const auto* c = std::get_if<NLICertificate>(&v.certificate);
  o.expect(c != nullptr, "certificate is not NLI");
  if (c) o.expect(c->extended_rank == 5, "extended rank " + std::to_string(c->extended_rank));
  o.expect(replays(v, &g), "certificate does not replay");
  if (o.pass) o.detail = "VRC via NLI, extended rank 5";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937 rng(20261015);
  for (int i = 0; i < 200; ++i) {
    const GraphOfGroups g = random_tree_graph(rng);
    const std::string tag = "tree " + std::to_string(i);
    o.expect(validate(g).empty(), tag + " invalid");
    const Verdict v = decide_vrc(g);
    o.expect(v.status == Status::VRC && std::holds_alternative<TreeCriterion>(v.certificate), tag + " verdict");
    const auto a = tree_abelianization(g, canonical_spanning_tree(g.graph));
    for (std::size_t x = 0; x < g.graph.vertex_count(); ++x)
      o.expect(is_injective(a.vertex_maps[x]), tag + " vertex map has a kernel");
  }
  if (o.pass) o.detail = "200 random trees VRC, all vertex maps injective";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::mt19937 rng(6);
  const std::vector<std::string> fixtures = {"path3.json",  "ex9.json", "gk0.json",          "gk1.json",
                                             "gk2.json",    "bs_2_3.json", "bks.json",       "torsion_tree.json",
                                             "gersten.json", "rank3.json"};
  std::size_t words = 0, with_witness = 0;
  for (const auto& f : fixtures) {
    const GraphOfGroups g = load_graph(f);
    const SpanningTree t = canonical_spanning_tree(g.graph);
    const BrittonContext ctx(g, t);
    std::optional<EuclideanWitness> w;
    if (f == "gk0.json") w = builtin_gk_witness(0);
    if (f == "gk1.json") w = builtin_gk_witness(1);
    if (f == "rank3.json") w = witness_from_json(load_json("rank3_witness.json"));
    if (f == "ex9.json") {
      const auto vs = offtree_vectors(g, t, tree_abelianization(g, t));
      if (vs)
        if (auto J = near_lin_indep(vs->vectors)) w = build_nli_witness(g, t, *J);
    }
    if (w) {
      o.expect(verify_witness(g, t, *w).passed(), f + " witness does not verify");
      ++with_witness;
    }
    for (int i = 0; i < 500; ++i, ++words) {
      const Word x = random_word(rng, ctx);
      o.expect(ctx.is_trivial(concat(x, inverse(x))), f + " w w^-1 not trivial");
      const Word r = ctx.reduce(x);
      o.expect(ctx.reduce(r) == r, f + " reduction not idempotent");
      if (w) o.expect(evaluate(g, *w, x) == evaluate(g, *w, r), f + " phi(w) != phi(reduce w)");
      for (int j = 0; j < 10; ++j)
        o.expect(ctx.reduce(rewrite_word(rng, ctx, x)).size() == r.size(), f + " reduced length changed");
    }
  }
  if (o.pass)
    o.detail = std::to_string(words) + " words over " + std::to_string(fixtures.size()) + " fixtures (" +
               std::to_string(with_witness) + " with witnesses), 10 rewritings each";
  return o;
}

Outcome ac7() {
  Outcome o;
  const IntegerMatrix id = IntegerMatrix::identity(2);
  const IntegerMatrix minus{{-1, 0}, {0, -1}};
  const IntegerMatrix swap{{0, 1}, {1, 0}};
  const IntegerMatrix flip{{1, 0}, {0, -1}};
  const IntegerMatrix r3{{0, -1}, {1, -1}};
  const IntegerMatrix r4{{0, -1}, {1, 0}};
  const IntegerMatrix r6{{0, -1}, {1, 1}};
  struct Entry {
    std::string name;
    std::vector<IntegerMatrix> gens;
    std::size_t order;
  };
  // GL(2,Z) has no element of order 5, so the cyclic orders stop at 1, 2, 3, 4, 6.
  const std::vector<Entry> catalogue = {
      {"C1", {id}, 1},          {"C2 (-I)", {minus}, 2},       {"C2 (swap)", {swap}, 2},
      {"C2 (flip)", {flip}, 2}, {"C3", {r3}, 3},               {"C4", {r4}, 4},
      {"C6", {r6}, 6},          {"D2 (swap,-I)", {swap, minus}, 4}, {"D2 (flip,-I)", {flip, minus}, 4},
      {"D3", {r3, swap}, 6},    {"D4", {r4, swap}, 8},         {"D6", {r6, swap}, 12}};
  const Integer bound = minkowski_bound(2);
  o.expect(bound == 24, "minkowski_bound(2) = " + bound.get_str());
  for (const auto& e : catalogue) {
    const auto r = is_finite({2, e.gens});
    o.expect(r.finite, e.name + " not finite");
    if (!r.finite) continue;
    o.expect(r.order() == e.order, e.name + " order " + std::to_string(r.order()));
    o.expect(Integer(static_cast<unsigned long>(r.order())) <= bound, e.name + " exceeds the bound");
  }
  const auto inf = is_finite({2, {swap, IntegerMatrix{{-1, 0}, {2, 1}}}});
  o.expect(!inf.finite, "{swap, [[-1,0],[2,1]]} reported finite");
  if (o.pass) o.detail = std::to_string(catalogue.size()) + " finite subgroups with correct orders, 1 infinite";
  return o;
}

std::vector<Integer*> q_entries(EuclideanWitness& w) {
  std::vector<Integer*> out;
  auto add = [&](IntegerMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(&m(i, j));
  };
  for (auto& q : w.q_generators) add(q);
  for (auto& [_, imgs] : w.vertex_images)
    for (auto& x : imgs) add(x.q);
  for (auto& [_, x] : w.letter_images) add(x.q);
  return out;
}

Outcome ac8() {
  Outcome o;
  std::vector<std::pair<GraphOfGroups, EuclideanWitness>> passing;
  int torsion_checked = 0;
  for (long k : {-1L, 0L, 1L}) passing.emplace_back(gk_encoding(k), builtin_gk_witness(static_cast<int>(k)));
  for (const char* f : {"gk0.json", "ex9.json", "bks.json", "torsion_tree.json"}) {
    const GraphOfGroups g = load_graph(f);
    const SpanningTree t = canonical_spanning_tree(g.graph);
    const auto vs = offtree_vectors(g, t, tree_abelianization(g, t));
    if (!vs) continue;
    const auto J = near_lin_indep(vs->vectors);
    if (!J) continue;
    const EuclideanWitness w = build_nli_witness(g, t, *J);
    const bool torsion_free = std::all_of(g.vertex_groups.begin(), g.vertex_groups.end(),
                                          [](const FgAbGroup& a) { return a.torsion.empty(); });
    if (torsion_free) {
      passing.emplace_back(g, w);
      continue;
    }
    // Torsion generators go to the identity, so only the free parts can inject.
    const auto r = verify_witness(g, t, w);
    o.expect(r.structure_errors.empty() && r.relations_ok && r.q_finite, std::string(f) + " relations");
    for (const auto& [v, ok] : r.free_part_injective_per_vertex)
      o.expect(ok, std::string(f) + " free part of " + v + " not injective");
    ++torsion_checked;
  }
  for (const auto& [g, w] : passing)
    o.expect(verify_witness(g, canonical_spanning_tree(g.graph), w).passed(), "a witness fails");
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> delta(1, 2), sign(0, 1);
  int caught = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& [g, w0] = passing[i % passing.size()];
    EuclideanWitness w = w0;
    auto entries = q_entries(w);
    *entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)] +=
        sign(rng) ? delta(rng) : -delta(rng);
    const bool failed = !verify_witness(g, canonical_spanning_tree(g.graph), w).passed();
    caught += failed;
    o.expect(failed, "mutation " + std::to_string(i) + " not detected");
  }
  if (o.pass)
    o.detail = std::to_string(passing.size()) + " witnesses pass, " + std::to_string(caught) +
               "/50 mutations caught, " +
               std::to_string(torsion_checked) + " torsion input injective on free parts";
  return o;
}

Outcome ac9() {
  Outcome o;
  const GraphOfGroups g = load_graph("gersten.json");
  const Verdict v = decide_vrc(g);
  o.expect(v.status == Status::UNKNOWN, "status " + to_string(v.status));
  o.expect(std::holds_alternative<Attempted>(v.certificate), "certificate is not Attempted");
  const auto ga = gram_obstruction(g, canonical_spanning_tree(g.graph));
  o.expect(!ga.obstruction, "Gram test reports an obstruction");
  o.expect(ga.note.find("no obstruction") == 0, "Gram note: " + ga.note);
  if (o.pass) o.detail = "UNKNOWN; Gram test: " + ga.note;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 G_k sweep", ac1},          {"AC2 G_kl sweep", ac2},
      {"AC3 BS sweep", ac3},           {"AC4 two-vertex NLI rank", ac4},
      {"AC5 random trees", ac5},       {"AC6 word engine", ac6},
      {"AC7 GL(2,Z) finiteness", ac7}, {"AC8 witness fault injection", ac8},
      {"AC9 Gersten UNKNOWN", ac9}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " (" << ms << " ms)"
              << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
