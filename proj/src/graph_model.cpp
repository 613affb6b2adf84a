#include "vrc/graph_model.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace vrc {

std::optional<std::size_t> SerreGraph::vertex_index(const std::string& id) const {
  auto it = std::find(vertices.begin(), vertices.end(), id);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

std::optional<std::size_t> SerreGraph::edge_index(const std::string& id) const {
  auto it = std::find(edges.begin(), edges.end(), id);
  if (it == edges.end()) return std::nullopt;
  return static_cast<std::size_t>(it - edges.begin());
}

std::vector<std::size_t> SerreGraph::edges_by_id() const {
  std::vector<std::size_t> idx(edges.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  return idx;
}

bool SerreGraph::is_connected() const {
  if (vertices.empty()) return false;
  std::vector<bool> seen(vertices.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (origin[e] != u || seen[terminus[e]]) continue;
      seen[terminus[e]] = true;
      queue.push_back(terminus[e]);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Rational euler_characteristic(const SerreGraph& g) {
  Rational chi(2 * static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()), 2);
  chi.canonicalize();
  return chi;
}

std::variant<GraphOfGroups, std::vector<Violation>> GraphOfGroups::build(
    std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  std::vector<Violation> errs;

  std::vector<std::size_t> vorder(vertices.size());
  std::iota(vorder.begin(), vorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(),
            [&](std::size_t a, std::size_t b) { return vertices[a].id < vertices[b].id; });
  std::vector<std::size_t> eorder(edges.size());
  std::iota(eorder.begin(), eorder.end(), 0);
  std::sort(eorder.begin(), eorder.end(),
            [&](std::size_t a, std::size_t b) { return edges[a].id < edges[b].id; });

  GraphOfGroups g;
  for (std::size_t k : vorder) {
    const std::string where = "/vertices/" + std::to_string(k);
    if (!g.graph.vertices.empty() && g.graph.vertices.back() == vertices[k].id)
      errs.push_back({where + "/id", "duplicate vertex id '" + vertices[k].id + "'"});
    g.graph.vertices.push_back(vertices[k].id);
    g.vertex_groups.push_back(vertices[k].group);
    g.vertex_source_index.push_back(k);
  }
  if (vertices.empty()) errs.push_back({"/vertices", "graph has no vertices"});

  std::set<std::string> ids;
  for (const auto& e : edges) {
    ids.insert(e.id);
  }
  const std::size_t m = edges.size();
  g.graph.edges.resize(2 * m);
  g.graph.inverse.resize(2 * m);
  g.graph.origin.resize(2 * m);
  g.graph.terminus.resize(2 * m);
  g.edge_groups.resize(2 * m);
  std::vector<std::optional<AbHom>> maps(2 * m);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = eorder[i];
    const EdgeSpec& e = edges[k];
    const std::string where = "/edges/" + std::to_string(k);
    g.edge_source_index.push_back(k);
    if (!seen.insert(e.id).second)
      errs.push_back({where + "/id", "duplicate edge id '" + e.id + "'"});
    if (ids.count(e.id + "~"))
      errs.push_back({where + "/id", "edge id '" + e.id + "~' is reserved for the inverse of '" +
                                         e.id + "'"});
    auto from = g.graph.vertex_index(e.from);
    auto to = g.graph.vertex_index(e.to);
    if (!from) errs.push_back({where + "/from", "unknown vertex '" + e.from + "'"});
    if (!to) errs.push_back({where + "/to", "unknown vertex '" + e.to + "'"});
    g.graph.edges[i] = e.id;
    g.graph.edges[i + m] = e.id + "~";
    g.graph.inverse[i] = i + m;
    g.graph.inverse[i + m] = i;
    g.graph.origin[i] = from.value_or(0);
    g.graph.terminus[i] = to.value_or(0);
    g.graph.origin[i + m] = to.value_or(0);
    g.graph.terminus[i + m] = from.value_or(0);
    g.edge_groups[i] = g.edge_groups[i + m] = e.group;
    if (!from || !to) continue;
    const FgAbGroup& gf = g.vertex_groups[*from];
    const FgAbGroup& gt = g.vertex_groups[*to];
    auto shape_ok = [&](const IntegerMatrix& a, const FgAbGroup& target, const char* name) {
      if (a.rows() == target.dim() && a.cols() == e.group.dim()) return true;
      errs.push_back({where + "/" + name,
                      std::string(name) + " must be " + std::to_string(target.dim()) + "x" +
                          std::to_string(e.group.dim()) + ", got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols())});
      return false;
    };
    if (shape_ok(e.alpha, gf, "alpha")) maps[i] = AbHom(e.group, gf, e.alpha);
    if (shape_ok(e.omega, gt, "omega")) maps[i + m] = AbHom(e.group, gt, e.omega);
  }
  if (!errs.empty()) return errs;
  for (auto& a : maps) g.alpha.push_back(std::move(*a));
  return g;
}

std::vector<VertexSpec> GraphOfGroups::vertex_specs() const {
  std::vector<VertexSpec> out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    out.push_back({graph.vertices[v], vertex_groups[v]});
  return out;
}

std::vector<EdgeSpec> GraphOfGroups::edge_specs() const {
  std::vector<EdgeSpec> out;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (!graph.is_positive(e)) continue;
    out.push_back({graph.edges[e], graph.vertices[graph.origin[e]],
                   graph.vertices[graph.terminus[e]], edge_groups[e], alpha[e].images(),
                   omega(e).images()});
  }
  return out;
}

std::vector<Violation> validate(const SerreGraph& g) {
  std::vector<Violation> out;
  if (g.vertices.empty()) out.push_back({"/vertices", "graph has no vertices"});
  const std::size_t n = g.edge_count();
  bool shape_ok = g.inverse.size() == n && g.origin.size() == n && g.terminus.size() == n;
  if (!shape_ok) {
    out.push_back({"/edges", "edge arrays have inconsistent lengths"});
    return out;
  }
  for (std::size_t e = 0; e < n; ++e) {
    const std::string where = "/edges/" + g.edges[e];
    if (g.inverse[e] >= n || g.origin[e] >= g.vertex_count() ||
        g.terminus[e] >= g.vertex_count()) {
      out.push_back({where, "edge refers to a missing edge or vertex"});
      continue;
    }
    if (g.inverse[e] == e) out.push_back({where, "inversion fixed point"});
    if (g.inverse[g.inverse[e]] != e) out.push_back({where, "inversion is not an involution"});
    if (g.origin[g.inverse[e]] != g.terminus[e])
      out.push_back({where, "origin of the inverse edge differs from the terminus"});
  }
  if (out.empty() && !g.vertices.empty() && !g.is_connected())
    out.push_back({"/edges", "graph is not connected"});
  return out;
}

std::vector<Violation> validate(const GraphOfGroups& g) {
  std::vector<Violation> out = validate(g.graph);
  if (!out.empty()) return out;
  auto vptr = [&](std::size_t v) {
    std::size_t k = v < g.vertex_source_index.size() ? g.vertex_source_index[v] : v;
    return "/vertices/" + std::to_string(k);
  };
  auto eptr = [&](std::size_t e) {
    std::size_t p = g.graph.is_positive(e) ? e : g.graph.inverse[e];
    std::size_t rank = 0;
    for (std::size_t f = 0; f < p; ++f)
      if (g.graph.is_positive(f)) ++rank;
    std::size_t k = rank < g.edge_source_index.size() ? g.edge_source_index[rank] : rank;
    return "/edges/" + std::to_string(k);
  };
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    if (auto err = g.vertex_groups[v].check()) out.push_back({vptr(v) + "/group", *err});
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
    const bool pos = g.graph.is_positive(e);
    const std::string where = eptr(e) + (pos ? "/alpha" : "/omega");
    const char* name = pos ? "alpha" : "omega";
    if (pos) {
      if (auto err = g.edge_groups[e].check()) out.push_back({eptr(e) + "/group", *err});
      if (!(g.edge_groups[e] == g.edge_groups[g.graph.inverse[e]]))
        out.push_back({eptr(e) + "/group", "edge group differs from that of its inverse"});
    }
    const AbHom& a = g.alpha[e];
    if (!(a.source() == g.edge_groups[e]) ||
        !(a.target() == g.vertex_groups[g.graph.origin[e]])) {
      out.push_back({where, std::string(name) + " has the wrong source or target"});
      continue;
    }
    if (!a.is_well_defined()) {
      out.push_back({where, std::string(name) + " not well-defined on torsion"});
      continue;
    }
    if (!is_injective(a)) out.push_back({where, std::string(name) + " not injective"});
  }
  return out;
}

std::vector<std::size_t> SpanningTree::tree_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < in_tree.size(); ++e)
    if (in_tree[e] && positive[e]) out.push_back(e);
  return out;
}

std::vector<std::size_t> SpanningTree::offtree_positive() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < in_tree.size(); ++e)
    if (!in_tree[e] && positive[e]) out.push_back(e);
  return out;
}

std::vector<std::string> SpanningTree::tree_edge_ids(const SerreGraph& g) const {
  std::vector<std::string> out;
  for (std::size_t e : tree_edges()) out.push_back(g.edges[e]);
  return out;
}

namespace {

SpanningTree empty_tree(const SerreGraph& g) {
  SpanningTree t;
  t.in_tree.assign(g.edge_count(), false);
  t.positive.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) t.positive[e] = g.is_positive(e);
  return t;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

SpanningTree canonical_spanning_tree(const SerreGraph& g) {
  SpanningTree t = empty_tree(g);
  if (g.vertices.empty()) return t;
  const std::vector<std::size_t> order = g.edges_by_id();
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e : order) {
      if (g.origin[e] != u || seen[g.terminus[e]]) continue;
      seen[g.terminus[e]] = true;
      t.in_tree[e] = t.in_tree[g.inverse[e]] = true;
      queue.push_back(g.terminus[e]);
    }
  }
  return t;
}

SpanningTree spanning_tree_from_edges(const SerreGraph& g,
                                      const std::vector<std::string>& edge_ids) {
  SpanningTree t = empty_tree(g);
  UnionFind uf(g.vertex_count());
  for (const auto& id : edge_ids) {
    auto e = g.edge_index(id);
    if (!e) throw std::invalid_argument("not a spanning tree: unknown edge '" + id + "'");
    if (t.in_tree[*e]) throw std::invalid_argument("not a spanning tree: edge '" + id + "' repeated");
    if (!uf.unite(g.origin[*e], g.terminus[*e]))
      throw std::invalid_argument("not a spanning tree: edge '" + id + "' closes a cycle");
    t.in_tree[*e] = t.in_tree[g.inverse[*e]] = true;
  }
  if (edge_ids.size() + 1 != g.vertex_count())
    throw std::invalid_argument("not a spanning tree: it misses some vertex");
  return t;
}

SpanningTreeList enumerate_spanning_trees(const SerreGraph& g, std::size_t cap) {
  SpanningTreeList out;
  std::vector<std::size_t> pairs;
  for (std::size_t e : g.edges_by_id())
    if (g.is_positive(e) && g.origin[e] != g.terminus[e]) pairs.push_back(e);
  const std::size_t need = g.vertex_count() == 0 ? 0 : g.vertex_count() - 1;
  std::vector<std::size_t> chosen;

  // Contract-then-delete recursion over edge pairs in id order.
  std::function<void(std::size_t, UnionFind)> rec = [&](std::size_t i, UnionFind uf) {
    if (out.truncated) return;
    if (chosen.size() == need) {
      if (out.trees.size() == cap) {
        out.truncated = true;
        return;
      }
      SpanningTree t = empty_tree(g);
      for (std::size_t e : chosen) t.in_tree[e] = t.in_tree[g.inverse[e]] = true;
      out.trees.push_back(std::move(t));
      return;
    }
    if (i == pairs.size() || pairs.size() - i < need - chosen.size()) return;
    const std::size_t e = pairs[i];
    if (uf.find(g.origin[e]) != uf.find(g.terminus[e])) {
      UnionFind merged = uf;
      merged.unite(g.origin[e], g.terminus[e]);
      chosen.push_back(e);
      rec(i + 1, std::move(merged));
      chosen.pop_back();
    }
    rec(i + 1, std::move(uf));
  };
  rec(0, UnionFind(g.vertex_count()));
  return out;
}

std::vector<std::size_t> tree_path(const SerreGraph& g, const SpanningTree& t, std::size_t v,
                                   std::size_t w) {
  std::vector<std::optional<std::size_t>> via(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue{v};
  seen[v] = true;
  while (!queue.empty() && !seen[w]) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (!t.in_tree[e] || g.origin[e] != u || seen[g.terminus[e]]) continue;
      seen[g.terminus[e]] = true;
      via[g.terminus[e]] = e;
      queue.push_back(g.terminus[e]);
    }
  }
  if (!seen[w]) throw std::invalid_argument("tree_path: vertices not joined by the tree");
  std::vector<std::size_t> path;
  for (std::size_t x = w; x != v; x = g.origin[*via[x]]) path.push_back(*via[x]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<AbElement> TreeAbelianization::alpha_images(const GraphOfGroups& g,
                                                       std::size_t e) const {
  std::vector<AbElement> out;
  const AbHom& a = g.alpha[e];
  for (std::size_t c = 0; c < a.source().dim(); ++c)
    out.push_back(image(g.graph.origin[e], a.image_of_generator(c)));
  return out;
}

TreeAbelianization tree_abelianization(const GraphOfGroups& g, const SpanningTree& t) {
  const std::size_t nv = g.graph.vertex_count();
  std::vector<std::size_t> offsets(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) offsets[v + 1] = offsets[v] + g.vertex_groups[v].dim();
  const std::size_t n = offsets[nv];

  std::vector<IntVector> rels;
  for (std::size_t v = 0; v < nv; ++v) {
    const FgAbGroup& G = g.vertex_groups[v];
    for (std::size_t i = 0; i < G.torsion.size(); ++i) {
      IntVector col(n, Integer(0));
      col[offsets[v] + G.free_rank + i] = G.torsion[i];
      rels.push_back(std::move(col));
    }
  }
  for (std::size_t e : t.tree_edges()) {
    const std::size_t a = g.graph.origin[e], b = g.graph.terminus[e];
    for (std::size_t c = 0; c < g.edge_groups[e].dim(); ++c) {
      IntVector col(n, Integer(0));
      const AbElement x = g.alpha[e].image_of_generator(c);
      const AbElement y = g.omega(e).image_of_generator(c);
      for (std::size_t i = 0; i < x.coords().size(); ++i) col[offsets[a] + i] += x[i];
      for (std::size_t i = 0; i < y.coords().size(); ++i) col[offsets[b] + i] -= y[i];
      rels.push_back(std::move(col));
    }
  }

  TreeAbelianization out{{}, {}, from_relations(n, IntegerMatrix::from_columns(n, rels)), {}};
  out.group = out.cokernel.group;
  out.offsets.assign(offsets.begin(), offsets.end() - 1);
  const IntegerMatrix& proj = out.cokernel.projection.images();
  for (std::size_t v = 0; v < nv; ++v) {
    AbHom map(g.vertex_groups[v], out.group,
              proj.column_range(offsets[v], g.vertex_groups[v].dim()));
    if (!is_injective(map))
      throw std::logic_error("tree abelianization is not injective on vertex '" +
                             g.graph.vertices[v] + "'");
    out.vertex_maps.push_back(std::move(map));
  }
  return out;
}

}  // namespace vrc
