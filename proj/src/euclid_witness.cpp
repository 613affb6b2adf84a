#include "vrc/euclid_witness.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>

#include "vrc/deciders.hpp"

namespace vrc {

namespace {

RationalVector apply(const IntegerMatrix& q, const RationalVector& v) {
  RationalVector out(q.rows(), Rational(0));
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) out[i] += q(i, j) * v[j];
  return out;
}

RationalVector free_part(const AbElement& x) {
  RationalVector out;
  for (std::size_t i = 0; i < x.group().free_rank; ++i) out.push_back(Rational(x[i]));
  return out;
}

// Product of generator images raised to the given (unreduced) exponents.
AffineElement evaluate_exponents(const std::vector<AffineElement>& images, const IntVector& x,
                                 std::size_t n) {
  AffineElement out = AffineElement::identity(n);
  for (std::size_t i = 0; i < x.size(); ++i) out = out * images[i].pow(x[i]);
  return out;
}

bool is_unimodular(const IntegerMatrix& q, std::size_t n) {
  if (q.rows() != n || q.cols() != n) return false;
  const Integer d = determinant(q);
  return d == 1 || d == -1;
}

void check_affine(const AffineElement& x, std::size_t n, const std::string& where,
                  std::vector<std::string>& errors) {
  if (x.translation.size() != n) errors.push_back(where + ": translation has the wrong length");
  if (!is_unimodular(x.q, n)) errors.push_back(where + ": q part is not in GL(n, Z)");
}

// Which vertex group elements map to the identity. Fills kernel generators
// not already trivial in G_v.
void vertex_injectivity(const FgAbGroup& G, const std::vector<AffineElement>& images,
                        std::size_t n, std::vector<IntVector>& bad, bool& free_injective) {
  const std::size_t k = G.dim();
  free_injective = true;
  if (k == 0) return;

  // Schreier BFS over the finite linear image P.
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<IntegerMatrix> nodes{IntegerMatrix::identity(n)};
  std::vector<IntVector> words{IntVector(k, Integer(0))};
  seen.emplace(to_string(nodes[0]), 0);
  std::vector<IntVector> schreier;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t i = 0; i < k; ++i) {
      IntegerMatrix next = images[i].q * nodes[head];
      IntVector w = words[head];
      w[i] += 1;
      auto it = seen.find(to_string(next));
      if (it == seen.end()) {
        seen.emplace(to_string(next), nodes.size());
        nodes.push_back(std::move(next));
        words.push_back(std::move(w));
      } else {
        const IntVector& h = words[it->second];
        for (std::size_t j = 0; j < k; ++j) w[j] -= h[j];
        if (!is_zero(w)) schreier.push_back(std::move(w));
      }
    }
  }
  const Lattice lambda = Lattice::from_generators(IntegerMatrix::from_columns(k, schreier));
  const IntegerMatrix& B = lambda.basis();

  // Translation homomorphism on the basis of Lambda, rows scaled to integers.
  IntegerMatrix T(n, B.cols());
  std::vector<RationalVector> rows(n, RationalVector(B.cols()));
  for (std::size_t j = 0; j < B.cols(); ++j) {
    const AffineElement e = evaluate_exponents(images, B.column(j), n);
    for (std::size_t i = 0; i < n; ++i) rows[i][j] = e.translation[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector r = clear_denominators(rows[i]);
    for (std::size_t j = 0; j < B.cols(); ++j) T(i, j) = r[j];
  }
  const Lattice K = kernel(T);
  std::vector<IntVector> kv;
  for (std::size_t j = 0; j < K.rank(); ++j) kv.push_back(B * K.basis().column(j));
  for (const IntVector& x : kv)
    if (!AbElement(G, x).is_zero()) bad.push_back(x);

  if (!kv.empty()) {
    const Lattice klat = Lattice::from_generators(IntegerMatrix::from_columns(k, kv));
    std::vector<IntVector> free_axes;
    for (std::size_t i = 0; i < G.free_rank; ++i) {
      IntVector e(k, Integer(0));
      e[i] = 1;
      free_axes.push_back(std::move(e));
    }
    const Lattice flat = Lattice::from_generators(IntegerMatrix::from_columns(k, free_axes));
    free_injective = lattice_intersection(klat, flat).is_zero();
  }
}

IntegerMatrix swap2() { return IntegerMatrix{{0, 1}, {1, 0}}; }

}  // namespace

AffineElement AffineElement::identity(std::size_t n) {
  return {RationalVector(n, Rational(0)), IntegerMatrix::identity(n)};
}

AffineElement AffineElement::operator*(const AffineElement& o) const {
  RationalVector t = apply(q, o.translation);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += translation[i];
  return {std::move(t), q * o.q};
}

AffineElement AffineElement::inverse() const {
  const IntegerMatrix qi = unimodular_inverse(q);
  RationalVector t = apply(qi, translation);
  for (auto& x : t) x = -x;
  return {std::move(t), qi};
}

AffineElement AffineElement::pow(const Integer& k) const {
  AffineElement base = k < 0 ? inverse() : *this;
  Integer e = abs(k);
  AffineElement out = identity(translation.size());
  while (e > 0) {
    if (e % 2 == 1) out = out * base;
    e /= 2;
    if (e > 0) base = base * base;
  }
  return out;
}

std::optional<SpanningTree> EuclideanWitness::implied_tree(const GraphOfGroups& g) const {
  const SerreGraph& gr = g.graph;
  for (const auto& [id, img] : letter_images) {
    auto e = gr.edge_index(id);
    if (!e || !gr.is_positive(*e)) return std::nullopt;
  }
  std::vector<std::string> ids;
  for (std::size_t e = 0; e < gr.edge_count(); ++e)
    if (gr.is_positive(e) && !letter_images.count(gr.edges[e])) ids.push_back(gr.edges[e]);
  try {
    return spanning_tree_from_edges(gr, ids);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

bool VerificationReport::injective() const {
  if (!injectivity_checked) return false;
  for (const auto& [v, ok] : injective_per_vertex)
    if (!ok) return false;
  return true;
}

AffineElement evaluate(const GraphOfGroups& g, const EuclideanWitness& w, std::size_t vertex,
                       const AbElement& x) {
  return evaluate_exponents(w.vertex_images.at(g.graph.vertices[vertex]), x.coords(), w.n);
}

AffineElement evaluate(const GraphOfGroups& g, const EuclideanWitness& w, const Word& word) {
  AffineElement out = AffineElement::identity(w.n);
  for (const Syllable& s : word) {
    if (const auto* v = std::get_if<VertexSyllable>(&s)) {
      out = out * evaluate(g, w, v->vertex, v->element);
    } else {
      const auto& l = std::get<LetterSyllable>(s);
      const AffineElement& img = w.letter_images.at(g.graph.edges[l.edge]);
      out = out * (l.exponent > 0 ? img : img.inverse());
    }
  }
  return out;
}

VerificationReport verify_witness(const GraphOfGroups& g, const SpanningTree& t,
                                  const EuclideanWitness& w) {
  VerificationReport rep;
  const SerreGraph& gr = g.graph;
  const std::size_t n = w.n;

  // Structure.
  if (n == 0) rep.structure_errors.push_back("n must be positive");
  for (std::size_t i = 0; i < w.q_generators.size(); ++i)
    if (!is_unimodular(w.q_generators[i], n))
      rep.structure_errors.push_back("q_generators[" + std::to_string(i) + "] is not in GL(n, Z)");
  for (std::size_t v = 0; v < gr.vertex_count(); ++v) {
    auto it = w.vertex_images.find(gr.vertices[v]);
    if (it == w.vertex_images.end()) {
      rep.structure_errors.push_back("missing images for vertex '" + gr.vertices[v] + "'");
      continue;
    }
    if (it->second.size() != g.vertex_groups[v].dim()) {
      rep.structure_errors.push_back("vertex '" + gr.vertices[v] + "' needs " +
                                     std::to_string(g.vertex_groups[v].dim()) + " images");
      continue;
    }
    for (std::size_t i = 0; i < it->second.size(); ++i)
      check_affine(it->second[i], n, "vertex '" + gr.vertices[v] + "' generator " +
                                         std::to_string(i), rep.structure_errors);
  }
  for (const auto& [id, img] : w.vertex_images)
    if (!gr.vertex_index(id)) rep.structure_errors.push_back("unknown vertex '" + id + "'");
  const auto offtree = t.offtree_positive();
  std::set<std::string> letters;
  for (std::size_t e : offtree) {
    letters.insert(gr.edges[e]);
    auto it = w.letter_images.find(gr.edges[e]);
    if (it == w.letter_images.end())
      rep.structure_errors.push_back("missing image for letter '" + gr.edges[e] + "'");
    else
      check_affine(it->second, n, "letter '" + gr.edges[e] + "'", rep.structure_errors);
  }
  for (const auto& [id, img] : w.letter_images)
    if (!letters.count(id))
      rep.structure_errors.push_back("'" + id + "' is not a positive off-tree edge");
  if (!rep.structure_errors.empty()) return rep;

  // Relations.
  for (std::size_t v = 0; v < gr.vertex_count(); ++v) {
    const auto& imgs = w.vertex_images.at(gr.vertices[v]);
    const FgAbGroup& G = g.vertex_groups[v];
    for (std::size_t i = 0; i < imgs.size(); ++i)
      for (std::size_t j = i + 1; j < imgs.size(); ++j)
        if (!(imgs[i] * imgs[j] == imgs[j] * imgs[i]))
          rep.relation_failures.push_back("vertex '" + gr.vertices[v] + "': generators " +
                                          std::to_string(i) + " and " + std::to_string(j) +
                                          " do not commute");
    for (std::size_t i = 0; i < G.torsion.size(); ++i)
      if (!(imgs[G.free_rank + i].pow(G.torsion[i]) == AffineElement::identity(n)))
        rep.relation_failures.push_back("vertex '" + gr.vertices[v] + "': torsion generator " +
                                        std::to_string(G.free_rank + i) + " has the wrong order");
  }
  for (std::size_t e = 0; e < gr.edge_count(); ++e) {
    if (!gr.is_positive(e)) continue;
    const std::size_t o = gr.origin[e], d = gr.terminus[e];
    for (std::size_t c = 0; c < g.edge_groups[e].dim(); ++c) {
      const AffineElement a = evaluate(g, w, o, g.alpha[e].image_of_generator(c));
      AffineElement b = evaluate(g, w, d, g.omega(e).image_of_generator(c));
      if (!t.in_tree[e]) {
        const AffineElement& l = w.letter_images.at(gr.edges[e]);
        b = l * b * l.inverse();
      }
      if (!(a == b))
        rep.relation_failures.push_back("edge '" + gr.edges[e] + "' generator " +
                                        std::to_string(c) + ": relation fails");
    }
  }

  // Finiteness of Q, and every q part inside it.
  bool q_parts_inside = true;
  try {
    const FinitenessResult fin = is_finite(MatGroupGens{n, w.q_generators});
    rep.q_finite = fin.finite;
    if (fin.finite) {
      rep.q_order = fin.order();
      std::set<std::string> members;
      for (const auto& m : fin.elements) members.insert(to_string(m));
      auto inside = [&](const AffineElement& x, const std::string& where) {
        if (!members.count(to_string(x.q))) {
          rep.relation_failures.push_back(where + ": q part is not in Q");
          q_parts_inside = false;
        }
      };
      for (const auto& [id, imgs] : w.vertex_images)
        for (std::size_t i = 0; i < imgs.size(); ++i)
          inside(imgs[i], "vertex '" + id + "' generator " + std::to_string(i));
      for (const auto& [id, img] : w.letter_images) inside(img, "letter '" + id + "'");
    }
  } catch (const std::invalid_argument& ex) {
    rep.structure_errors.push_back(ex.what());
    return rep;
  }
  rep.relations_ok = rep.relation_failures.empty();

  // Injectivity on vertex groups; the Schreier search needs a finite image.
  if (!rep.q_finite || !q_parts_inside) return rep;
  rep.injectivity_checked = true;
  for (std::size_t v = 0; v < gr.vertex_count(); ++v) {
    const std::string& id = gr.vertices[v];
    std::vector<IntVector> bad;
    bool free_ok = true;
    vertex_injectivity(g.vertex_groups[v], w.vertex_images.at(id), n, bad, free_ok);
    rep.injective_per_vertex[id] = bad.empty();
    rep.free_part_injective_per_vertex[id] = free_ok;
    if (!bad.empty()) rep.kernel_generators[id] = std::move(bad);
  }
  return rep;
}

std::optional<OfftreeVectors> offtree_vectors(const GraphOfGroups& g, const SpanningTree& t,
                                              const TreeAbelianization& a) {
  OfftreeVectors out;
  for (std::size_t e : t.offtree_positive()) {
    const FgAbGroup& Ge = g.edge_groups[e];
    if (!Ge.is_cyclic()) return std::nullopt;
    if (Ge.is_trivial()) continue;
    out.edges.push_back(e);
    out.vectors.push_back(
        free_part(a.image(g.graph.terminus[e], g.omega(e).image_of_generator(0))));
    out.vectors.push_back(free_part(a.image(g.graph.origin[e], g.alpha[e].image_of_generator(0))));
  }
  return out;
}

EuclideanWitness build_nli_witness(const GraphOfGroups& g, const SpanningTree& t,
                                   const std::vector<std::size_t>& J) {
  const TreeAbelianization a = tree_abelianization(g, t);
  const auto ov = offtree_vectors(g, t, a);
  if (!ov) throw std::invalid_argument("an off-tree edge group is not cyclic");
  const auto assign = nli_assignment(ov->vectors, J);
  if (!assign) throw std::invalid_argument("J does not certify near linear independence");

  const std::size_t r = a.group.free_rank;
  if (r == 0) throw std::invalid_argument("tree abelianization has free rank 0");

  // Basis: J vectors, completed greedily by standard vectors.
  std::vector<RationalVector> basis;
  for (std::size_t j : J) basis.push_back(ov->vectors[j]);
  for (std::size_t i = 0; i < r && basis.size() < r; ++i) {
    RationalVector e(r, Rational(0));
    e[i] = 1;
    basis.push_back(e);
    if (rational_rank(basis) < basis.size()) basis.pop_back();
  }
  std::vector<IntVector> cols;
  for (const auto& b : basis) {
    IntVector c;
    for (const auto& x : b) c.push_back(x.get_num());  // free coordinates are integral
    cols.push_back(std::move(c));
  }
  const IntegerMatrix P = IntegerMatrix::from_columns(r, cols);

  EuclideanWitness w;
  w.n = r;
  const SerreGraph& gr = g.graph;
  for (std::size_t v = 0; v < gr.vertex_count(); ++v) {
    std::vector<AffineElement> imgs;
    for (std::size_t i = 0; i < g.vertex_groups[v].dim(); ++i) {
      const RationalVector x =
          free_part(a.image(v, AbElement::generator(g.vertex_groups[v], i)));
      imgs.push_back({*solve_rational(P, x), IntegerMatrix::identity(r)});
    }
    w.vertex_images[gr.vertices[v]] = std::move(imgs);
  }

  std::set<std::string> seen;
  for (std::size_t e : t.offtree_positive()) {
    IntegerMatrix q = IntegerMatrix::identity(r);
    for (std::size_t k = 0; k < ov->edges.size(); ++k) {
      if (ov->edges[k] != e) continue;
      const auto [ja, ea] = (*assign)[2 * k];
      const auto [jb, eb] = (*assign)[2 * k + 1];
      const long s = ea * eb;
      if (ja == jb) {
        q(ja, ja) = s;
      } else {
        q(ja, ja) = 0;
        q(jb, jb) = 0;
        q(jb, ja) = s;
        q(ja, jb) = s;
      }
    }
    if (q != IntegerMatrix::identity(r) && seen.insert(to_string(q)).second)
      w.q_generators.push_back(q);
    w.letter_images[gr.edges[e]] = {RationalVector(r, Rational(0)), q};
  }
  return w;
}

EuclideanWitness builtin_gkl_witness(int k, int l) {
  if (k < -1 || k > 1 || l < -1 || l > 1 || (k == 0 && l == 0))
    throw std::invalid_argument("no builtin witness for G_{" + std::to_string(k) + "," +
                                std::to_string(l) + "}");
  // t acts by a matrix q with q·e2 = (l, k), normalized by the swap.
  IntegerMatrix q;
  if (k == 0 && l == 1) q = swap2();
  else if (k == 1 && l == 1) q = {{0, 1}, {-1, 1}};
  else if (k == -1 && l == 1) q = {{0, 1}, {-1, -1}};
  else if (k == 1 && l == -1) q = {{0, -1}, {1, 1}};
  else if (k == -1 && l == -1) q = {{0, -1}, {1, -1}};
  else if (k == 0 && l == -1) q = {{0, -1}, {1, 0}};
  else if (k == 1 && l == 0) q = IntegerMatrix::identity(2);
  else q = {{-1, 0}, {0, -1}};

  EuclideanWitness w;
  w.n = 2;
  w.q_generators.push_back(swap2());
  if (q != IntegerMatrix::identity(2) && q != swap2()) w.q_generators.push_back(q);
  const IntegerMatrix id = IntegerMatrix::identity(2);
  w.vertex_images["v"] = {{{Rational(1), Rational(0)}, id}, {{Rational(0), Rational(1)}, id}};
  w.letter_images["s"] = {{Rational(0), Rational(0)}, swap2()};
  w.letter_images["t"] = {{Rational(0), Rational(0)}, q};
  return w;
}

EuclideanWitness builtin_gk_witness(int k) {
  if (k < -1 || k > 1)
    throw std::invalid_argument("G_" + std::to_string(k) + " has no witness: |k| >= 2");
  return builtin_gkl_witness(k, 1);
}

}  // namespace vrc
