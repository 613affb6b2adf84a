#pragma once

// Words in the fundamental group of a graph of groups relative to a spanning
// tree, and their reduction to reduced and cyclically reduced expressions.
// A stable letter t_e satisfies t_e · omega_e(c) · t_e^-1 = alpha_e(c).

#include <optional>
#include <variant>
#include <vector>

#include "vrc/graph_model.hpp"

namespace vrc {

struct VertexSyllable {
  std::size_t vertex;
  AbElement element;
  friend bool operator==(const VertexSyllable&, const VertexSyllable&) = default;
};

struct LetterSyllable {
  std::size_t edge;  // positive, off-tree
  int exponent;      // +1 or -1
  friend bool operator==(const LetterSyllable&, const LetterSyllable&) = default;
};

using Syllable = std::variant<VertexSyllable, LetterSyllable>;
using Word = std::vector<Syllable>;

Syllable inverse(const Syllable& s);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

struct Elliptic {
  std::size_t vertex;
  AbElement representative;
};
struct Hyperbolic {};
using Classification = std::variant<Elliptic, Hyperbolic>;

struct CyclicReduction {
  Word word;
  Word conjugator;  // input = conjugator · word · conjugator^-1
};

class BrittonContext {
 public:
  BrittonContext(const GraphOfGroups& g, SpanningTree t);

  const GraphOfGroups& graph() const { return *g_; }
  const SpanningTree& tree() const { return t_; }

  /// Moves x from vertex v to w along the tree; absent when some edge map
  /// along the path does not contain the current element.
  std::optional<AbElement> transport(std::size_t v, const AbElement& x, std::size_t w) const;

  /// Empty when the word is well formed for this context.
  std::optional<std::string> check(const Word& w) const;

  /// A reduced word that depends only on the element represented: the word is
  /// first brought to normal form as a loop at the least vertex, with every
  /// vertex element after an edge a canonical coset representative, and then
  /// tree letters are dropped and the reduction rules applied.
  Word reduce(const Word& w) const;
  bool is_reduced(const Word& w) const { return reduce(w).size() == w.size(); }
  bool is_trivial(const Word& w) const { return reduce(w).empty(); }
  CyclicReduction cyclically_reduce(const Word& w) const;
  Classification classify(const Word& w) const;
  Order word_order(const Word& w) const;

 private:
  Word normal_form(const Word& w) const;
  Word apply_rules(const Word& w) const;
  void push(Word& stack, Syllable s) const;
  std::optional<VertexSyllable> merge(const VertexSyllable& a, const VertexSyllable& b) const;
  std::optional<VertexSyllable> pinch(const AbElement& g, std::size_t at, std::size_t edge,
                                      int right_exponent) const;
  std::vector<std::optional<AbElement>> reach(std::size_t v, const AbElement& x) const;

  const GraphOfGroups* g_;
  SpanningTree t_;
  std::vector<std::vector<std::size_t>> dist_;
  std::vector<Lattice> image_;  // per edge e: alpha_e(G_e) plus torsion relations, lifted
};

}  // namespace vrc
