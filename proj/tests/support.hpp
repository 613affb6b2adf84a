#pragma once

// Shared fixtures and random generators for the test binaries.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "vrc/britton.hpp"
#include "vrc/families.hpp"
#include "vrc/serialize.hpp"

namespace vrc::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(VRC_CORPUS_DIR) + "/" + name;
}

inline Json load_json(const std::string& name) {
  std::ifstream in(corpus_path(name));
  if (!in) throw std::runtime_error("missing corpus file " + name);
  return Json::parse(in);
}

inline GraphOfGroups load_graph(const std::string& name) { return graph_from_json(load_json(name)); }

inline IntVector ivec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline AbElement element(const GraphOfGroups& g, std::size_t vertex, std::initializer_list<long> xs) {
  return AbElement(g.vertex_groups[vertex], ivec(xs));
}

inline std::size_t vertex_of(const GraphOfGroups& g, const std::string& id) {
  return *g.graph.vertex_index(id);
}
inline std::size_t edge_of(const GraphOfGroups& g, const std::string& id) {
  return *g.graph.edge_index(id);
}

inline AbElement random_element(std::mt19937& rng, const FgAbGroup& g, int bound = 3) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVector c(g.dim());
  for (auto& x : c) x = d(rng);
  return AbElement(g, c);
}

/// Random tree of abelian groups: free ranks 1..3, optional Z/2 or Z/6
/// torsion, edge groups Z^k or Z/2 with injective maps.
inline GraphOfGroups random_tree_graph(std::mt19937& rng, std::size_t max_vertices = 5) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  std::uniform_int_distribution<int> rank(1, 3);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> entry(-3, 3);
  const std::size_t n = nv(rng);
  std::vector<VertexSpec> vs;
  for (std::size_t i = 0; i < n; ++i) {
    FgAbGroup g = FgAbGroup::free(rank(rng));
    const int t = coin(rng);
    if (t == 1) g.torsion = {2};
    if (t == 2) g.torsion = {6};
    vs.push_back({"v" + std::to_string(i), g});
  }
  auto torsion_unit = [](const FgAbGroup& g) { return g.torsion.empty() ? Integer(0) : g.torsion[0] / 2; };
  auto random_free_map = [&](const FgAbGroup& target, std::size_t k) {
    for (;;) {
      IntegerMatrix m(target.dim(), k);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = entry(rng);
      IntegerMatrix free_block(target.free_rank, k);
      for (std::size_t i = 0; i < target.free_rank; ++i)
        for (std::size_t j = 0; j < k; ++j) free_block(i, j) = m(i, j);
      if (vrc::rank(free_block) == k) return m;
    }
  };
  std::vector<EdgeSpec> es;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    const std::size_t p = parent(rng);
    const FgAbGroup& gp = vs[p].group;
    const FgAbGroup& gi = vs[i].group;
    EdgeSpec e;
    e.id = "e" + std::to_string(i);
    e.from = vs[p].id;
    e.to = vs[i].id;
    if (!gp.torsion.empty() && !gi.torsion.empty() && coin(rng) == 0) {
      e.group = FgAbGroup::cyclic(2);
      e.alpha = IntegerMatrix(gp.dim(), 1);
      e.alpha(gp.dim() - 1, 0) = torsion_unit(gp);
      e.omega = IntegerMatrix(gi.dim(), 1);
      e.omega(gi.dim() - 1, 0) = torsion_unit(gi);
    } else {
      std::uniform_int_distribution<std::size_t> kd(1, std::min(gp.free_rank, gi.free_rank));
      const std::size_t k = kd(rng);
      e.group = FgAbGroup::free(k);
      e.alpha = random_free_map(gp, k);
      e.omega = random_free_map(gi, k);
    }
    es.push_back(e);
  }
  return build_or_throw(vs, es);
}

/// Random word over vertex elements and stable letters of the context.
inline Word random_word(std::mt19937& rng, const BrittonContext& ctx, std::size_t max_len = 8) {
  const GraphOfGroups& g = ctx.graph();
  const std::vector<std::size_t> letters = ctx.tree().offtree_positive();
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick_v(0, g.graph.vertex_count() - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  Word w;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (!letters.empty() && kind(rng) == 0) {
      std::uniform_int_distribution<std::size_t> pick_e(0, letters.size() - 1);
      w.push_back(LetterSyllable{letters[pick_e(rng)], sign(rng) ? 1 : -1});
    } else {
      const std::size_t v = pick_v(rng);
      w.push_back(VertexSyllable{v, random_element(rng, g.vertex_groups[v], 2)});
    }
  }
  return w;
}

/// Number of stable letters in a word.
inline std::size_t letter_count(const Word& w) {
  std::size_t n = 0;
  for (const auto& s : w) n += std::holds_alternative<LetterSyllable>(s);
  return n;
}

inline Word conjugate_relator(const Word& u, const Word& r) {
  return concat(concat(u, r), inverse(u));
}

/// A defining relator t_e omega_e(c) t_e^-1 alpha_e(c)^-1 for a random edge
/// and edge-group element; the letters are dropped on tree edges.
inline Word random_relator(std::mt19937& rng, const BrittonContext& ctx) {
  const GraphOfGroups& g = ctx.graph();
  std::vector<std::size_t> pos;
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e)
    if (g.graph.is_positive(e)) pos.push_back(e);
  if (pos.empty()) return {};
  const std::size_t e = pos[std::uniform_int_distribution<std::size_t>(0, pos.size() - 1)(rng)];
  const AbElement c = random_element(rng, g.edge_groups[e], 2);
  const bool letter = !ctx.tree().in_tree[e];
  Word r;
  if (letter) r.push_back(LetterSyllable{e, 1});
  r.push_back(VertexSyllable{g.graph.terminus[e], g.omega(e)(c)});
  if (letter) r.push_back(LetterSyllable{e, -1});
  r.push_back(VertexSyllable{g.graph.origin[e], -g.alpha[e](c)});
  return r;
}

/// A rewriting of w representing the same element: vertex syllables are split
/// into two factors, and cancelling pairs u u^-1 and defining relators are
/// inserted.
inline Word rewrite_word(std::mt19937& rng, const BrittonContext& ctx, const Word& w) {
  std::uniform_int_distribution<int> coin(0, 3);
  Word out;
  auto insert_pair = [&] {
    const Word u = random_word(rng, ctx, 3);
    if (coin(rng) == 0) {
      out = concat(out, conjugate_relator(u, random_relator(rng, ctx)));
    } else {
      out = concat(concat(out, u), inverse(u));
    }
  };
  for (const auto& s : w) {
    if (coin(rng) == 0) insert_pair();
    if (const auto* v = std::get_if<VertexSyllable>(&s); v && coin(rng) == 0) {
      const AbElement x = random_element(rng, v->element.group(), 2);
      out.push_back(VertexSyllable{v->vertex, v->element - x});
      out.push_back(VertexSyllable{v->vertex, x});
    } else {
      out.push_back(s);
    }
  }
  if (coin(rng) == 0) insert_pair();
  return out;
}

}  // namespace vrc::testing
