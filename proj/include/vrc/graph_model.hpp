#pragma once

// Finite graphs of finitely generated abelian groups. Edges come in inverse
// pairs; the stored edge e has inverse "e~", and E+ is the set of stored edges.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vrc/fgab.hpp"

namespace vrc {

struct SerreGraph {
  std::vector<std::string> vertices;  // sorted
  std::vector<std::string> edges;
  std::vector<std::size_t> inverse;
  std::vector<std::size_t> origin;
  std::vector<std::size_t> terminus;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::optional<std::size_t> vertex_index(const std::string& id) const;
  std::optional<std::size_t> edge_index(const std::string& id) const;
  /// The stored edge of a pair has the smaller id.
  bool is_positive(std::size_t e) const { return edges[e] < edges[inverse[e]]; }
  /// Edge indices in increasing id order.
  std::vector<std::size_t> edges_by_id() const;
  bool is_connected() const;
};

Rational euler_characteristic(const SerreGraph& g);

/// One entry of the external format: an inverse pair, stored once.
struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
  FgAbGroup group;
  IntegerMatrix alpha;  // into the vertex group of `from`
  IntegerMatrix omega;  // into the vertex group of `to`
};

struct VertexSpec {
  std::string id;
  FgAbGroup group;
};

struct Violation {
  std::string where;  // JSON pointer into the input document
  std::string what;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct GraphOfGroups {
  SerreGraph graph;
  std::vector<FgAbGroup> vertex_groups;
  std::vector<FgAbGroup> edge_groups;
  std::vector<AbHom> alpha;  // alpha[e]: G_e -> G_origin(e)
  // Positions in the input document, for error pointers.
  std::vector<std::size_t> vertex_source_index;
  std::vector<std::size_t> edge_source_index;  // per stored edge

  const AbHom& omega(std::size_t e) const { return alpha[graph.inverse[e]]; }

  /// Expands stored pairs. Structural errors (unknown ids, bad shapes) are
  /// returned as violations instead of a graph.
  static std::variant<GraphOfGroups, std::vector<Violation>> build(
      std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

  std::vector<VertexSpec> vertex_specs() const;
  std::vector<EdgeSpec> edge_specs() const;
};

/// Empty iff the graph of groups satisfies every axiom.
std::vector<Violation> validate(const GraphOfGroups& g);
std::vector<Violation> validate(const SerreGraph& g);

struct SpanningTree {
  std::vector<bool> in_tree;  // per edge, closed under inversion
  std::vector<bool> positive; // E+

  std::vector<std::size_t> tree_edges() const;          // positive tree edges
  std::vector<std::size_t> offtree_positive() const;    // positive off-tree edges
  std::vector<std::string> tree_edge_ids(const SerreGraph& g) const;
  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

/// BFS from the least vertex, exploring edges in id order.
SpanningTree canonical_spanning_tree(const SerreGraph& g);
/// Builds the tree with the given positive edge ids; throws
/// std::invalid_argument("not a spanning tree") when they do not form one.
SpanningTree spanning_tree_from_edges(const SerreGraph& g,
                                      const std::vector<std::string>& edge_ids);

struct SpanningTreeList {
  std::vector<SpanningTree> trees;
  bool truncated = false;
};

SpanningTreeList enumerate_spanning_trees(const SerreGraph& g, std::size_t cap = 256);

/// Unique path in the tree as a list of edges, from v to w.
std::vector<std::size_t> tree_path(const SerreGraph& g, const SpanningTree& t,
                                   std::size_t v, std::size_t w);

struct TreeAbelianization {
  FgAbGroup group;
  std::vector<AbHom> vertex_maps;  // G_v -> A
  Cokernel cokernel;               // ambient (+)G_v -> A
  std::vector<std::size_t> offsets;  // first ambient coordinate of each vertex

  AbElement image(std::size_t vertex, const AbElement& x) const {
    return vertex_maps[vertex](x);
  }
  /// Images in A of alpha_e(c), c over the generators of G_e.
  std::vector<AbElement> alpha_images(const GraphOfGroups& g, std::size_t e) const;
};

/// Throws std::logic_error if some vertex map fails to be injective.
TreeAbelianization tree_abelianization(const GraphOfGroups& g, const SpanningTree& t);

}  // namespace vrc
