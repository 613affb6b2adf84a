#pragma once

// Homomorphisms from pi_1 of a graph of groups to Q^n ⋊ Q, Q a finite group
// of integer matrices, and their verification.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrc/britton.hpp"
#include "vrc/graph_model.hpp"
#include "vrc/matgrp.hpp"

namespace vrc {

/// The affine map x -> q·x + translation.
struct AffineElement {
  RationalVector translation;
  IntegerMatrix q;

  static AffineElement identity(std::size_t n);
  AffineElement operator*(const AffineElement& o) const;
  AffineElement inverse() const;
  AffineElement pow(const Integer& k) const;
  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

struct EuclideanWitness {
  std::size_t n = 0;
  std::vector<IntegerMatrix> q_generators;
  std::map<std::string, std::vector<AffineElement>> vertex_images;  // per canonical generator
  std::map<std::string, AffineElement> letter_images;               // per off-tree edge in E+

  /// Positive tree edges implied by the letter keys, or absent when the
  /// complement of the letters is not a spanning tree of g.
  std::optional<SpanningTree> implied_tree(const GraphOfGroups& g) const;
};

struct VerificationReport {
  std::vector<std::string> structure_errors;  // shape and key mismatches
  bool relations_ok = false;
  std::vector<std::string> relation_failures;
  bool q_finite = false;
  std::optional<std::size_t> q_order;
  // Injectivity is only decided when Q is finite and holds every q part.
  bool injectivity_checked = false;
  std::map<std::string, bool> injective_per_vertex;
  std::map<std::string, bool> free_part_injective_per_vertex;
  std::map<std::string, std::vector<IntVector>> kernel_generators;  // exponent vectors

  bool injective() const;
  bool passed() const { return structure_errors.empty() && relations_ok && q_finite && injective(); }
};

VerificationReport verify_witness(const GraphOfGroups& g, const SpanningTree& t,
                                  const EuclideanWitness& w);

/// Image of a vertex element: product of generator images raised to the coordinates.
AffineElement evaluate(const GraphOfGroups& g, const EuclideanWitness& w, std::size_t vertex,
                       const AbElement& x);
AffineElement evaluate(const GraphOfGroups& g, const EuclideanWitness& w, const Word& word);

/// Vectors whose near linear independence is tested. For each positive
/// off-tree edge e with nontrivial cyclic G_e = <c>, vectors[2k] and
/// vectors[2k+1] are the free parts of rho(omega_e(c)) and rho(alpha_e(c)) in
/// A ⊗ Q, where e = edges[k].
struct OfftreeVectors {
  std::vector<std::size_t> edges;
  std::vector<RationalVector> vectors;
};

/// Absent if some off-tree edge group is not cyclic.
std::optional<OfftreeVectors> offtree_vectors(const GraphOfGroups& g, const SpanningTree& t,
                                              const TreeAbelianization& a);

/// Throws std::invalid_argument if J does not certify near linear independence.
EuclideanWitness build_nli_witness(const GraphOfGroups& g, const SpanningTree& t,
                                   const std::vector<std::size_t>& J);

/// Lattice forms of the explicit witnesses for G_k, |k| <= 1, on the encoding
/// with vertex "v" and loops "s", "t". Throws std::invalid_argument otherwise.
EuclideanWitness builtin_gk_witness(int k);
/// Witnesses for G_{k,l} with k, l in {0, 1, -1}, same encoding.
EuclideanWitness builtin_gkl_witness(int k, int l);

}  // namespace vrc
