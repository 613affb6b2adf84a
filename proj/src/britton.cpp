#include "vrc/britton.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

namespace vrc {

Syllable inverse(const Syllable& s) {
  if (auto* v = std::get_if<VertexSyllable>(&s)) return VertexSyllable{v->vertex, -v->element};
  const auto& l = std::get<LetterSyllable>(s);
  return LetterSyllable{l.edge, -l.exponent};
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

BrittonContext::BrittonContext(const GraphOfGroups& g, SpanningTree t)
    : g_(&g), t_(std::move(t)) {
  const SerreGraph& G = g.graph;
  const std::size_t n = G.vertex_count();
  dist_.assign(n, std::vector<std::size_t>(n, std::numeric_limits<std::size_t>::max()));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> queue{s};
    dist_[s][s] = 0;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t e = 0; e < G.edge_count(); ++e) {
        if (!t_.in_tree[e] || G.origin[e] != u) continue;
        std::size_t w = G.terminus[e];
        if (dist_[s][w] != std::numeric_limits<std::size_t>::max()) continue;
        dist_[s][w] = dist_[s][u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (std::size_t e = 0; e < G.edge_count(); ++e) {
    const FgAbGroup& target = g.vertex_groups[G.origin[e]];
    image_.push_back(Lattice::from_generators(hstack(g.alpha[e].images(), target.relation_matrix())));
  }
}

std::vector<std::optional<AbElement>> BrittonContext::reach(std::size_t v,
                                                            const AbElement& x) const {
  const SerreGraph& G = g_->graph;
  std::vector<std::optional<AbElement>> at(G.vertex_count());
  at[v] = x;
  std::deque<std::size_t> queue{v};
  std::vector<bool> seen(G.vertex_count(), false);
  seen[v] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < G.edge_count(); ++e) {
      if (!t_.in_tree[e] || G.origin[e] != u || seen[G.terminus[e]]) continue;
      seen[G.terminus[e]] = true;
      auto c = preimage(g_->alpha[e], *at[u]);
      if (!c) continue;
      at[G.terminus[e]] = g_->omega(e)(*c);
      queue.push_back(G.terminus[e]);
    }
  }
  return at;
}

std::optional<AbElement> BrittonContext::transport(std::size_t v, const AbElement& x,
                                                   std::size_t w) const {
  if (v == w) return x;
  const SerreGraph& G = g_->graph;
  AbElement cur = x;
  for (std::size_t e : tree_path(G, t_, v, w)) {
    auto c = preimage(g_->alpha[e], cur);
    if (!c) return std::nullopt;
    cur = g_->omega(e)(*c);
  }
  return cur;
}

std::optional<std::string> BrittonContext::check(const Word& w) const {
  const SerreGraph& G = g_->graph;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string pos = "syllable " + std::to_string(i) + ": ";
    if (auto* v = std::get_if<VertexSyllable>(&w[i])) {
      if (v->vertex >= G.vertex_count()) return pos + "unknown vertex";
      if (!(v->element.group() == g_->vertex_groups[v->vertex]))
        return pos + "element does not belong to the group of vertex '" +
               G.vertices[v->vertex] + "'";
    } else {
      const auto& l = std::get<LetterSyllable>(w[i]);
      if (l.edge >= G.edge_count()) return pos + "unknown edge";
      if (!t_.positive[l.edge]) return pos + "edge '" + G.edges[l.edge] + "' is not in E+";
      if (t_.in_tree[l.edge])
        return pos + "edge '" + G.edges[l.edge] + "' is a tree edge and has no stable letter";
      if (l.exponent != 1 && l.exponent != -1) return pos + "exponent must be 1 or -1";
    }
  }
  return std::nullopt;
}

std::optional<VertexSyllable> BrittonContext::merge(const VertexSyllable& a,
                                                    const VertexSyllable& b) const {
  auto ra = reach(a.vertex, a.element);
  auto rb = reach(b.vertex, b.element);
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < ra.size(); ++u) {
    if (!ra[u] || !rb[u]) continue;
    if (!best || dist_[a.vertex][u] < dist_[a.vertex][*best]) best = u;
  }
  if (!best) return std::nullopt;
  return VertexSyllable{*best, *ra[*best] + *rb[*best]};
}

std::optional<VertexSyllable> BrittonContext::pinch(const AbElement& g, std::size_t at,
                                                    std::size_t edge,
                                                    int right_exponent) const {
  const SerreGraph& G = g_->graph;
  // t^-1 g t needs g ~ alpha_e(c); t g t^-1 needs g ~ omega_e(c).
  const std::size_t e = right_exponent == 1 ? edge : G.inverse[edge];
  auto x = transport(at, g, G.origin[e]);
  if (!x) return std::nullopt;
  auto c = preimage(g_->alpha[e], *x);
  if (!c) return std::nullopt;
  return VertexSyllable{G.terminus[e], g_->omega(e)(*c)};
}

void BrittonContext::push(Word& stack, Syllable s) const {
  if (auto* v = std::get_if<VertexSyllable>(&s)) {
    if (v->element.is_zero()) return;
    if (!stack.empty()) {
      if (auto* top = std::get_if<VertexSyllable>(&stack.back())) {
        if (auto m = merge(*top, *v)) {
          stack.pop_back();
          push(stack, std::move(*m));
          return;
        }
      }
    }
    stack.push_back(std::move(s));
    return;
  }
  const auto l = std::get<LetterSyllable>(s);
  if (!stack.empty()) {
    if (auto* top = std::get_if<LetterSyllable>(&stack.back())) {
      if (top->edge == l.edge && top->exponent == -l.exponent) {
        stack.pop_back();
        return;
      }
    } else if (stack.size() >= 2) {
      const auto* below = std::get_if<LetterSyllable>(&stack[stack.size() - 2]);
      if (below && below->edge == l.edge && below->exponent == -l.exponent) {
        const auto& mid = std::get<VertexSyllable>(stack.back());
        if (auto p = pinch(mid.element, mid.vertex, l.edge, l.exponent)) {
          stack.pop_back();
          stack.pop_back();
          push(stack, std::move(*p));
          return;
        }
      }
    }
  }
  stack.push_back(l);
}

// The word is rewritten as g0 y1 g1 ... yn gn, a loop of directed edges at
// the least vertex with g_i in the group of the terminus of y_i, using
// y · omega_y(c) = alpha_y(c) · y for every edge (tree edges are trivial).
// Moving the omega_y-part of each g_i across y_i, right to left, and
// cancelling backtracks y ȳ around a trivial element gives the normal form,
// which is unique for the element.
Word BrittonContext::normal_form(const Word& w) const {
  const SerreGraph& G = g_->graph;
  std::vector<std::size_t> ys;
  std::vector<AbElement> gs{AbElement::zero(g_->vertex_groups[0])};
  std::size_t cur = 0;
  auto walk = [&](std::size_t to) {
    for (std::size_t e : tree_path(G, t_, cur, to)) {
      ys.push_back(e);
      gs.push_back(AbElement::zero(g_->vertex_groups[G.terminus[e]]));
    }
    cur = to;
  };
  for (const auto& s : w) {
    if (const auto* v = std::get_if<VertexSyllable>(&s)) {
      walk(v->vertex);
      gs.back() = gs.back() + v->element;
    } else {
      const auto& l = std::get<LetterSyllable>(s);
      const std::size_t y = l.exponent == 1 ? l.edge : G.inverse[l.edge];
      walk(G.origin[y]);
      ys.push_back(y);
      gs.push_back(AbElement::zero(g_->vertex_groups[G.terminus[y]]));
      cur = G.terminus[y];
    }
  }
  walk(0);

  for (;;) {
    for (std::size_t i = ys.size(); i >= 1; --i) {
      const std::size_t y = ys[i - 1];
      const std::size_t back = G.inverse[y];
      const FgAbGroup& grp = gs[i].group();
      const AbElement r(grp, reduce_modulo(gs[i].coords(), image_[back]));
      const AbElement part = gs[i] - r;
      if (part.is_zero()) continue;
      const auto c = preimage(g_->alpha[back], part);
      if (!c) throw std::logic_error("normal_form: coset representative outside the edge image");
      gs[i] = r;
      gs[i - 1] = gs[i - 1] + g_->alpha[y](*c);
    }
    bool cancelled = false;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (ys[i] != G.inverse[ys[i - 1]] || !gs[i].is_zero()) continue;
      gs[i - 1] = gs[i - 1] + gs[i + 1];
      ys.erase(ys.begin() + (i - 1), ys.begin() + (i + 1));
      gs.erase(gs.begin() + i, gs.begin() + (i + 2));
      cancelled = true;
      break;
    }
    if (!cancelled) break;
  }

  Word out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i].is_zero())
      out.push_back(VertexSyllable{i == 0 ? 0 : G.terminus[ys[i - 1]], gs[i]});
    if (i < ys.size() && !t_.in_tree[ys[i]]) {
      const std::size_t y = ys[i];
      out.push_back(t_.positive[y] ? LetterSyllable{y, 1} : LetterSyllable{G.inverse[y], -1});
    }
  }
  return out;
}

Word BrittonContext::apply_rules(const Word& w) const {
  Word stack;
  for (const auto& s : w) push(stack, s);
  return stack;
}

Word BrittonContext::reduce(const Word& w) const { return apply_rules(normal_form(w)); }

CyclicReduction BrittonContext::cyclically_reduce(const Word& w) const {
  CyclicReduction out{reduce(w), {}};
  for (;;) {
    const std::size_t n = out.word.size();
    bool rotated = false;
    for (std::size_t k = 1; k < n && !rotated; ++k) {
      Word r(out.word.begin() + k, out.word.end());
      r.insert(r.end(), out.word.begin(), out.word.begin() + k);
      Word rr = reduce(r);
      if (rr.size() < n) {
        out.conjugator.insert(out.conjugator.end(), out.word.begin(), out.word.begin() + k);
        out.word = std::move(rr);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  out.conjugator = reduce(out.conjugator);
  return out;
}

Classification BrittonContext::classify(const Word& w) const {
  CyclicReduction c = cyclically_reduce(w);
  if (c.word.empty()) return Elliptic{0, AbElement::zero(g_->vertex_groups[0])};
  if (c.word.size() == 1) {
    if (auto* v = std::get_if<VertexSyllable>(&c.word[0])) return Elliptic{v->vertex, v->element};
  }
  return Hyperbolic{};
}

Order BrittonContext::word_order(const Word& w) const {
  Classification c = classify(w);
  if (auto* e = std::get_if<Elliptic>(&c)) return element_order(e->representative);
  return Order::infinity();
}

}  // namespace vrc
