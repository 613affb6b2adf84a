#include "vrc/deciders.hpp"

#include <set>
#include <sstream>

namespace vrc {

namespace {

IntVector free_coords(const AbElement& x) {
  return IntVector(x.coords().begin(), x.coords().begin() + x.group().free_rank);
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) s += (s.empty() ? "" : ",") + id;
  return "{" + s + "}";
}

std::string join_indices(const std::vector<std::size_t>& J) {
  std::string s;
  for (auto j : J) s += (s.empty() ? "" : ",") + std::to_string(j);
  return "{" + s + "}";
}

// Vertex torsion columns and tree-edge columns alpha(c) - omega(c) of the
// ambient direct sum of vertex groups.
std::vector<IntVector> relation_columns(const GraphOfGroups& g, const SpanningTree& t,
                                        const std::vector<std::size_t>& offsets, std::size_t n) {
  std::vector<IntVector> rels;
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v) {
    const FgAbGroup& G = g.vertex_groups[v];
    for (std::size_t i = 0; i < G.torsion.size(); ++i) {
      IntVector col(n, Integer(0));
      col[offsets[v] + G.free_rank + i] = G.torsion[i];
      rels.push_back(std::move(col));
    }
  }
  for (std::size_t e : t.tree_edges()) {
    for (std::size_t c = 0; c < g.edge_groups[e].dim(); ++c) {
      IntVector col(n, Integer(0));
      const AbElement x = g.alpha[e].image_of_generator(c);
      const AbElement y = g.omega(e).image_of_generator(c);
      for (std::size_t i = 0; i < x.coords().size(); ++i) col[offsets[g.graph.origin[e]] + i] += x[i];
      for (std::size_t i = 0; i < y.coords().size(); ++i) col[offsets[g.graph.terminus[e]] + i] -= y[i];
      rels.push_back(std::move(col));
    }
  }
  return rels;
}

std::size_t column_rank(std::size_t n, const std::vector<IntVector>& cols) {
  if (cols.empty()) return 0;
  return rank(IntegerMatrix::from_columns(n, cols));
}

NLICertificate make_nli(const GraphOfGroups& g, const SpanningTree& t, const TreeAbelianization& a,
                        const OfftreeVectors& ov, const std::vector<std::size_t>& J) {
  NLICertificate c;
  c.tree = t.tree_edge_ids(g.graph);
  for (std::size_t e : ov.edges) c.edges.push_back(g.graph.edges[e]);
  c.vectors = ov.vectors;
  c.J = J;
  std::size_t n = 0;
  for (const auto& G : g.vertex_groups) n += G.dim();
  std::vector<IntVector> cols = relation_columns(g, t, a.offsets, n);
  c.relation_rank = column_rank(n, cols);
  for (std::size_t j : J) {
    const std::size_t e = ov.edges[j / 2];
    const bool omega_side = j % 2 == 0;
    const std::size_t v = omega_side ? g.graph.terminus[e] : g.graph.origin[e];
    const AbElement x = omega_side ? g.omega(e).image_of_generator(0) : g.alpha[e].image_of_generator(0);
    IntVector col(n, Integer(0));
    for (std::size_t i = 0; i < x.coords().size(); ++i) col[a.offsets[v] + i] = x[i];
    cols.push_back(std::move(col));
  }
  c.extended_rank = column_rank(n, cols);
  return c;
}

// a = image of omega_e(c), b = image of alpha_e(c).
std::pair<AbElement, AbElement> cycle_images(const GraphOfGroups& g, const TreeAbelianization& a,
                                             std::size_t e) {
  if (g.edge_groups[e].is_trivial()) return {AbElement::zero(a.group), AbElement::zero(a.group)};
  return {a.image(g.graph.terminus[e], g.omega(e).image_of_generator(0)),
          a.image(g.graph.origin[e], g.alpha[e].image_of_generator(0))};
}

// ---- Gram analysis helpers

Integer bilinear(const IntVector& x, const IntegerMatrix& S, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * S(i, j) * y[j];
  return s;
}

bool positive_definite(const IntegerMatrix& S) {
  for (std::size_t k = 1; k <= S.rows(); ++k) {
    IntegerMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = S(i, j);
    if (determinant(m) <= 0) return false;
  }
  return true;
}

struct VertexSpan {
  std::size_t dim = 0;
  std::vector<IntVector> gens;  // nonzero free images
};

// d = 2 only: positive semidefinite and positive on every vertex span.
bool admissible2(const IntegerMatrix& S, const std::vector<VertexSpan>& spans) {
  const Integer det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
  if (S(0, 0) < 0 || S(1, 1) < 0 || det < 0) return false;
  for (const auto& w : spans) {
    if (w.dim == 2 && !positive_definite(S)) return false;
    for (const auto& x : w.gens)
      if (bilinear(x, S, x) <= 0) return false;
  }
  return true;
}

IntegerMatrix sym_from_unknowns(std::size_t d, const IntVector& s) {
  IntegerMatrix S(d, d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) S(i, j) = S(j, i) = s[k++];
  return S;
}

std::optional<std::pair<std::size_t, std::size_t>> match_gkl(const GraphOfGroups& g) {
  const auto vs = g.vertex_specs();
  const auto es = g.edge_specs();
  for (int k = -1; k <= 1; ++k)
    for (int l = -1; l <= 1; ++l) {
      if (k == 0 && l == 0) continue;
      const GraphOfGroups ref = gkl_encoding(k, l);
      const auto rv = ref.vertex_specs();
      const auto re = ref.edge_specs();
      if (vs.size() != rv.size() || es.size() != re.size()) return std::nullopt;
      bool same = vs[0].id == rv[0].id && vs[0].group == rv[0].group;
      for (std::size_t i = 0; same && i < es.size(); ++i)
        same = es[i].id == re[i].id && es[i].from == re[i].from && es[i].to == re[i].to &&
               es[i].group == re[i].group && es[i].alpha == re[i].alpha &&
               es[i].omega == re[i].omega;
      if (same) return std::pair<std::size_t, std::size_t>(k + 1, l + 1);
    }
  return std::nullopt;
}

std::vector<SpanningTree> trees_for(const GraphOfGroups& g, const VrcOptions& o, Verdict& v) {
  switch (o.tree_mode) {
    case VrcOptions::TreeMode::Canonical:
      return {canonical_spanning_tree(g.graph)};
    case VrcOptions::TreeMode::Explicit:
      try {
        return {spanning_tree_from_edges(g.graph, o.tree_edges)};
      } catch (const std::invalid_argument& ex) {
        throw PreconditionError(ex.what(), {{"/tree", ex.what()}});
      }
    case VrcOptions::TreeMode::Exhaust:
      break;
  }
  SpanningTreeList list = enumerate_spanning_trees(g.graph, o.tree_cap);
  if (list.truncated)
    v.notes.push_back("spanning-tree enumeration stopped at the cap of " +
                      std::to_string(o.tree_cap));
  return std::move(list.trees);
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::VRC: return "VRC";
    case Status::NOT_VRC: return "NOT_VRC";
    case Status::UNKNOWN: return "UNKNOWN";
    case Status::LR: return "LR";
    case Status::NOT_LR: return "NOT_LR";
  }
  return "?";
}

std::optional<Status> status_from_string(const std::string& s) {
  for (Status x : {Status::VRC, Status::NOT_VRC, Status::UNKNOWN, Status::LR, Status::NOT_LR})
    if (to_string(x) == s) return x;
  return std::nullopt;
}

std::string certificate_type(const Certificate& c) {
  static const char* names[] = {"TreeCriterion",   "BalancedCycle",       "NotBalanced",
                                "NLI",             "GramInfeasible",      "WitnessVerified",
                                "FamilyClosedForm", "MatrixGroupFiniteness", "AutomorphismOrder",
                                "Attempted"};
  return names[c.index()];
}

// ------------------------------------------------------------------ NLI

std::optional<std::vector<std::size_t>> near_lin_indep(const std::vector<RationalVector>& vs) {
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool zero = true;
    for (const auto& x : vs[i]) zero = zero && x == 0;
    if (zero) return std::nullopt;
    bool seen = false;
    for (std::size_t j : J) {
      if (vs[j] == vs[i]) seen = true;
      RationalVector neg = vs[j];
      for (auto& x : neg) x = -x;
      if (neg == vs[i]) seen = true;
    }
    if (!seen) J.push_back(i);
  }
  std::vector<RationalVector> chosen;
  for (std::size_t j : J) chosen.push_back(vs[j]);
  if (rational_rank(chosen) != J.size()) return std::nullopt;
  return J;
}

std::optional<std::vector<std::pair<std::size_t, int>>> nli_assignment(
    const std::vector<RationalVector>& vs, const std::vector<std::size_t>& J) {
  std::vector<RationalVector> chosen;
  for (std::size_t j : J) {
    if (j >= vs.size()) return std::nullopt;
    chosen.push_back(vs[j]);
  }
  if (rational_rank(chosen) != J.size()) return std::nullopt;
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& v : vs) {
    std::optional<std::pair<std::size_t, int>> hit;
    for (std::size_t p = 0; p < chosen.size() && !hit; ++p) {
      RationalVector neg = chosen[p];
      for (auto& x : neg) x = -x;
      if (chosen[p] == v) hit = {p, 1};
      else if (neg == v) hit = {p, -1};
    }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

// ------------------------------------------------------------ balancedness

BalanceResult balanced_offtree_cycle(const GraphOfGroups& g, const SpanningTree& t,
                                     std::size_t e) {
  if (euler_characteristic(g.graph) != 0)
    throw PreconditionError("balanced test needs Euler characteristic 0");
  const auto off = t.offtree_positive();
  if (off.size() != 1 || off[0] != e)
    throw PreconditionError("edge '" + g.graph.edges[e] + "' is not the unique off-tree edge");
  if (!g.edge_groups[e].is_cyclic())
    throw PreconditionError("edge group of '" + g.graph.edges[e] + "' is not cyclic");

  const TreeAbelianization a = tree_abelianization(g, t);
  auto [x, y] = cycle_images(g, a, e);
  const auto tree = t.tree_edge_ids(g.graph);
  const std::string& id = g.graph.edges[e];
  if (cyclic_intersection_trivial(x, y))
    return {true, BalancedCycle{tree, id, x, y, true, std::nullopt}};
  if (auto pc = power_conjugacy_diag(x, y)) return {true, BalancedCycle{tree, id, x, y, false, pc}};
  return {false, NotBalanced{tree, id, x, y}};
}

// ---------------------------------------------------------------- Gram test

GramAnalysis gram_obstruction(const GraphOfGroups& g, const SpanningTree& t) {
  GramAnalysis out;
  const TreeAbelianization a = tree_abelianization(g, t);
  const std::size_t d = a.group.free_rank;
  if (d == 0) {
    out.exact = true;
    out.note = "no obstruction: the tree abelianization is finite";
    return out;
  }

  std::vector<VertexSpan> spans;
  bool all_zero = true;
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v) {
    VertexSpan s;
    for (std::size_t i = 0; i < g.vertex_groups[v].dim(); ++i) {
      IntVector x = free_coords(a.image(v, AbElement::generator(g.vertex_groups[v], i)));
      if (!is_zero(x)) s.gens.push_back(std::move(x));
    }
    s.dim = column_rank(d, s.gens);
    all_zero = all_zero && s.dim == 0;
    spans.push_back(std::move(s));
  }

  const std::size_t u = d * (d + 1) / 2;
  std::vector<IntVector> rows;
  for (std::size_t e : t.offtree_positive()) {
    const std::size_t o = g.graph.origin[e], w = g.graph.terminus[e];
    const std::size_t k = g.edge_groups[e].dim();
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t c2 = c; c2 < k; ++c2) {
        const IntVector x = free_coords(a.image(o, g.alpha[e].image_of_generator(c)));
        const IntVector y = free_coords(a.image(o, g.alpha[e].image_of_generator(c2)));
        const IntVector p = free_coords(a.image(w, g.omega(e).image_of_generator(c)));
        const IntVector q = free_coords(a.image(w, g.omega(e).image_of_generator(c2)));
        IntVector row(u, Integer(0));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = i; j < d; ++j, ++idx)
            row[idx] = i == j ? Integer(x[i] * y[i] - p[i] * q[i])
                              : Integer(x[i] * y[j] + x[j] * y[i] - p[i] * q[j] - p[j] * q[i]);
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  }
  const IntegerMatrix C = rows.empty() ? IntegerMatrix(0, u) : IntegerMatrix::from_rows(u, rows);
  const std::size_t rk = rows.empty() ? 0 : rank(C);
  const std::size_t p = u - rk;

  auto infeasible = [&](std::string reason) {
    out.exact = true;
    out.obstruction = GramInfeasible{t.tree_edge_ids(g.graph), d, C, std::move(reason)};
    return out;
  };
  auto feasible = [&](std::string note) {
    out.exact = true;
    out.note = "no obstruction: " + std::move(note);
    return out;
  };

  if (all_zero) return feasible("every vertex group has finite image");
  if (p == u) return feasible("the constraints are vacuous");

  if (d == 1) return infeasible("the constraints force S = 0 on a nonzero vertex image");

  if (d == 2) {
    if (p == 0) return infeasible("the constraints force S = 0 on a nonzero vertex image");
    if (p == 1) {
      const IntVector s0 = kernel(C).basis().column(0);
      const IntegerMatrix S = sym_from_unknowns(2, s0);
      if (admissible2(S, spans)) return feasible("S = " + to_string(S));
      const IntegerMatrix T = sym_from_unknowns(2, negated(s0));
      if (admissible2(T, spans)) return feasible("S = " + to_string(T));
      return infeasible("the solution line spanned by " + to_string(S) +
                        " contains no admissible form (det " +
                        Integer(S(0, 0) * S(1, 1) - S(0, 1) * S(0, 1)).get_str() + ")");
    }
    // p == 2: the solution plane is the trace-orthogonal complement of Y.
    const IntVector& r = rows.front();
    const Integer a11 = 2 * r[0], a12 = r[1], a22 = 2 * r[2];
    const Integer det = a11 * a22 - a12 * a12;
    if (det < 0) return feasible("the solution plane meets the positive-definite cone");
    if (det > 0) return infeasible("the solution plane meets the semidefinite cone only in 0");
    IntVector z = a11 != 0 ? IntVector{-a12, a11} : IntVector{Integer(1), Integer(0)};
    IntegerMatrix S(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) S(i, j) = z[i] * z[j];
    if (admissible2(S, spans)) return feasible("S = " + to_string(S));
    return infeasible("semidefinite solutions are multiples of " + to_string(S) +
                      ", which vanishes on a vertex image");
  }

  // d >= 3: sample integer combinations of a kernel basis.
  const Lattice K = kernel(C);
  const std::size_t dims = K.rank();
  if (dims <= 6) {
    std::vector<int> coef(dims, -2);
    for (;;) {
      IntVector s(u, Integer(0));
      for (std::size_t i = 0; i < dims; ++i)
        for (std::size_t j = 0; j < u; ++j) s[j] += coef[i] * K.basis()(j, i);
      if (positive_definite(sym_from_unknowns(d, s))) {
        out.note = "no obstruction: sampled a positive-definite solution";
        return out;
      }
      std::size_t i = 0;
      while (i < dims && coef[i] == 2) coef[i++] = -2;
      if (i == dims) break;
      ++coef[i];
    }
  }
  out.note = "inconclusive: free rank " + std::to_string(d) +
             " is beyond the exact analysis and sampling found no positive-definite solution";
  return out;
}

// --------------------------------------------------------------- pipelines

Verdict decide_vrc(const GraphOfGroups& g, const VrcOptions& options) {
  if (auto v = validate(g); !v.empty()) throw PreconditionError("invalid graph of groups", v);
  Verdict out;
  const Rational chi = euler_characteristic(g.graph);

  if (chi == 1) {
    out.status = Status::VRC;
    out.certificate = TreeCriterion{};
    out.notes.push_back("the underlying graph is a tree");
    return out;
  }

  std::vector<std::string> attempted{"tree"};

  if (chi == 0) {
    attempted.push_back("balanced-cycle");
    for (const SpanningTree& t : enumerate_spanning_trees(g.graph, options.tree_cap).trees) {
      const std::size_t e = t.offtree_positive().front();
      if (!g.edge_groups[e].is_cyclic()) continue;
      BalanceResult b = balanced_offtree_cycle(g, t, e);
      out.status = b.balanced ? Status::VRC : Status::NOT_VRC;
      out.certificate = std::move(b.certificate);
      out.notes.push_back("one cycle; edge '" + g.graph.edges[e] + "' has cyclic edge group and " +
                          (b.balanced ? "the group is balanced" : "the group is not balanced"));
      return out;
    }
    out.notes.push_back("no cycle edge has a cyclic edge group");
  }

  const std::vector<SpanningTree> trees = trees_for(g, options, out);

  attempted.push_back("near-linear-independence");
  for (const SpanningTree& t : trees) {
    const TreeAbelianization a = tree_abelianization(g, t);
    const auto ov = offtree_vectors(g, t, a);
    const std::string tid = join_ids(t.tree_edge_ids(g.graph));
    if (!ov) {
      out.notes.push_back("tree " + tid + ": an off-tree edge group is not cyclic");
      continue;
    }
    if (auto J = near_lin_indep(ov->vectors)) {
      out.status = Status::VRC;
      out.certificate = make_nli(g, t, a, *ov, *J);
      out.notes.push_back("tree " + tid + ": off-tree images nearly linearly independent, J = " +
                          join_indices(*J));
      return out;
    }
    out.notes.push_back("tree " + tid + ": off-tree images not nearly linearly independent");
  }

  attempted.push_back("witness");
  auto try_witness = [&](const EuclideanWitness& w, const std::string& source) {
    const auto t = w.implied_tree(g);
    if (!t) {
      out.notes.push_back(source + " witness: letters do not complement a spanning tree");
      return false;
    }
    const VerificationReport rep = verify_witness(g, *t, w);
    if (!rep.passed()) {
      out.notes.push_back(source + " witness failed verification");
      return false;
    }
    out.status = Status::VRC;
    out.certificate = WitnessVerified{t->tree_edge_ids(g.graph), source, w};
    out.notes.push_back(source + " witness verified");
    return true;
  };
  for (const auto& w : options.witnesses)
    if (try_witness(w, "user")) return out;
  if (options.builtin_witnesses)
    if (auto m = match_gkl(g)) {
      const int k = static_cast<int>(m->first) - 1, l = static_cast<int>(m->second) - 1;
      if (try_witness(builtin_gkl_witness(k, l),
                      "builtin G_{" + std::to_string(k) + "," + std::to_string(l) + "}"))
        return out;
    }

  attempted.push_back("gram-obstruction");
  for (const SpanningTree& t : trees) {
    GramAnalysis ga = gram_obstruction(g, t);
    if (ga.obstruction) {
      out.status = Status::NOT_VRC;
      out.notes.push_back("Gram obstruction: " + ga.obstruction->reason);
      out.certificate = std::move(*ga.obstruction);
      return out;
    }
    out.notes.push_back("Gram test on tree " + join_ids(t.tree_edge_ids(g.graph)) + ": " +
                        ga.note);
  }

  out.status = Status::UNKNOWN;
  out.certificate = Attempted{attempted};
  return out;
}

Verdict decide_lr_amalgam_virtZn(std::size_t n, const IntegerMatrix& x, const IntegerMatrix& y) {
  for (const IntegerMatrix* m : {&x, &y})
    if (m->rows() != n || m->cols() != n)
      throw PreconditionError("matrices must be " + std::to_string(n) + "x" + std::to_string(n));
  MatGroupGens gens{n, {x, y}};
  FinitenessResult fin;
  try {
    if (matrix_order(x).infinite || matrix_order(y).infinite)
      throw PreconditionError("x and y must have finite order");
    fin = is_finite(gens);
  } catch (const std::invalid_argument& ex) {
    throw PreconditionError(ex.what());
  }
  Verdict out;
  out.status = fin.finite ? Status::LR : Status::NOT_LR;
  out.notes.push_back(fin.finite ? "<x,y> is finite of order " + std::to_string(fin.order())
                                 : "<x,y> is infinite: " + fin.reason);
  out.certificate = MatrixGroupFiniteness{std::move(gens), std::move(fin)};
  return out;
}

Verdict decide_lr_hnn_abelian(const FgAbGroup& A, const std::vector<AbElement>& n_gens,
                              const std::vector<AbElement>& xi_images) {
  if (n_gens.size() != xi_images.size())
    throw PreconditionError("xi needs one image per generator of N");
  const std::size_t s = n_gens.size();
  for (const auto* list : {&n_gens, &xi_images})
    for (const auto& x : *list)
      if (!(x.group() == A)) throw PreconditionError("element outside the ambient group");

  std::vector<IntVector> pc, xc;
  for (std::size_t i = 0; i < s; ++i) {
    pc.push_back(n_gens[i].coords());
    xc.push_back(xi_images[i].coords());
  }
  const FgAbGroup Zs = FgAbGroup::free(s);
  const AbHom pi(Zs, A, IntegerMatrix::from_columns(A.dim(), pc));
  const AbHom xi(Zs, A, IntegerMatrix::from_columns(A.dim(), xc));

  // N = Z^s / ker(pi), and xi must vanish on ker(pi).
  const HomKernel ker = hom_kernel(pi);
  const IntegerMatrix& kb = ker.embedding.images();
  for (std::size_t j = 0; j < kb.cols(); ++j)
    if (!xi(AbElement(Zs, kb.column(j))).is_zero())
      throw PreconditionError("xi is not well defined on N");
  const Cokernel N = from_relations(s, kb);

  // Images of xi in N coordinates.
  std::vector<IntVector> lifts;
  for (std::size_t i = 0; i < s; ++i) {
    auto pre = preimage(pi, xi_images[i]);
    if (!pre) throw PreconditionError("xi(" + n_gens[i].to_string() + ") is not in N");
    lifts.push_back(pre->coords());
  }
  const std::size_t k = N.group.dim();
  IntegerMatrix M(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector lifted(s, Integer(0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t r = 0; r < s; ++r) lifted[r] += N.section(i, j) * lifts[i][r];
    const AbElement img = N.projection(AbElement(Zs, lifted));
    for (std::size_t r = 0; r < k; ++r) M(r, j) = img[r];
  }
  const AbHom eta(N.group, N.group, M);
  if (!is_injective(eta)) throw PreconditionError("xi is not injective on N");
  for (std::size_t j = 0; j < k; ++j)
    if (!preimage(eta, AbElement::generator(N.group, j)))
      throw PreconditionError("xi is not surjective on N");

  Verdict out;
  const std::size_t r = N.group.free_rank;
  Integer f = 1;
  if (r > 0) {
    IntegerMatrix F(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) F(i, j) = M(i, j);
    Order of;
    try {
      of = matrix_order(F);
    } catch (const std::invalid_argument& ex) {
      throw PreconditionError(ex.what());
    }
    if (of.infinite) {
      out.status = Status::NOT_LR;
      out.certificate = AutomorphismOrder{M, N.group, Order::infinity()};
      out.notes.push_back("xi has infinite order on the free part of N");
      return out;
    }
    f = of.value;
  }
  AbHom p = AbHom::identity(N.group);
  for (Integer i = 0; i < f; ++i) p = eta.compose_after(p);
  const AbHom power = p;
  Integer j = 1;
  const AbHom id = AbHom::identity(N.group);
  while (!(p == id)) {
    p = power.compose_after(p);
    ++j;
  }
  out.status = Status::LR;
  out.certificate = AutomorphismOrder{M, N.group, Order::finite(f * j)};
  out.notes.push_back("xi has order " + Integer(f * j).get_str() + " in Aut(N)");
  return out;
}

Verdict decide_lr_single_hnn(const GraphOfGroups& g) {
  if (auto v = validate(g); !v.empty()) throw PreconditionError("invalid graph of groups", v);
  const SerreGraph& gr = g.graph;
  if (gr.vertex_count() != 1 || gr.edge_count() != 2)
    throw PreconditionError("the HNN decider needs one vertex and one loop");
  const std::size_t e = gr.is_positive(0) ? 0 : 1;
  const FgAbGroup& A = g.vertex_groups[0];
  std::vector<AbElement> ngens, images;
  for (std::size_t c = 0; c < g.edge_groups[e].dim(); ++c) {
    ngens.push_back(g.alpha[e].image_of_generator(c));
    images.push_back(g.omega(e).image_of_generator(c));
  }
  try {
    return decide_lr_hnn_abelian(A, ngens, images);
  } catch (const PreconditionError&) {
  }
  Verdict out;
  out.notes.push_back("t^-1 alpha(c) t = omega(c) does not define an automorphism of alpha(G_e)");
  if (g.edge_groups[e].is_cyclic()) {
    const SpanningTree t = canonical_spanning_tree(gr);
    BalanceResult b = balanced_offtree_cycle(g, t, e);
    if (!b.balanced) {
      out.status = Status::NOT_LR;
      out.certificate = std::move(b.certificate);
      out.notes.push_back("not balanced, hence not (VRC) and not (LR)");
      return out;
    }
  }
  out.status = Status::UNKNOWN;
  out.certificate = Attempted{{"automorphism-order", "balanced-cycle"}};
  return out;
}

// ------------------------------------------------------------------ replay

namespace {

struct Replayer {
  const Verdict& v;
  const GraphOfGroups* g;

  std::optional<std::string> need_graph() const {
    if (!g) return "certificate needs the graph of groups";
    if (!validate(*g).empty()) return "graph of groups is invalid";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const TreeCriterion&) const {
    if (auto e = need_graph()) return e;
    if (v.status != Status::VRC) return "tree criterion only proves VRC";
    if (euler_characteristic(g->graph) != 1) return "underlying graph is not a tree";
    return std::nullopt;
  }

  std::optional<std::string> cycle(const std::vector<std::string>& tree, const std::string& edge,
                                   const AbElement& a, const AbElement& b) const {
    if (auto e = need_graph()) return e;
    if (euler_characteristic(g->graph) != 0) return "Euler characteristic is not 0";
    SpanningTree t;
    try {
      t = spanning_tree_from_edges(g->graph, tree);
    } catch (const std::invalid_argument& ex) {
      return std::string(ex.what());
    }
    auto idx = g->graph.edge_index(edge);
    if (!idx || t.offtree_positive() != std::vector<std::size_t>{*idx})
      return "edge is not the off-tree edge";
    if (!g->edge_groups[*idx].is_cyclic()) return "edge group is not cyclic";
    const auto [x, y] = cycle_images(*g, tree_abelianization(*g, t), *idx);
    if (!(x == a) || !(y == b)) return "recorded images differ from the tree abelianization";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const BalancedCycle& c) const {
    if (v.status != Status::VRC) return "balanced cycle only proves VRC";
    if (auto e = cycle(c.tree, c.edge, c.a, c.b)) return e;
    if (c.trivial_intersection) {
      if (!cyclic_intersection_trivial(c.a, c.b)) return "<a> and <b> intersect nontrivially";
      return std::nullopt;
    }
    if (!c.power) return "no balancing data";
    if (c.power->m < 1 || (c.power->epsilon != 1 && c.power->epsilon != -1))
      return "malformed balancing data";
    if (!(c.b * c.power->m == c.a * (c.power->m * c.power->epsilon)))
      return "b^m != a^(+-m)";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const NotBalanced& c) const {
    if (v.status != Status::NOT_VRC && v.status != Status::NOT_LR)
      return "imbalance only refutes VRC or LR";
    if (auto e = cycle(c.tree, c.edge, c.a, c.b)) return e;
    if (cyclic_intersection_trivial(c.a, c.b) || power_conjugacy_diag(c.a, c.b))
      return "the images are balanced";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const NLICertificate& c) const {
    if (auto e = need_graph()) return e;
    if (v.status != Status::VRC) return "NLI only proves VRC";
    SpanningTree t;
    try {
      t = spanning_tree_from_edges(g->graph, c.tree);
    } catch (const std::invalid_argument& ex) {
      return std::string(ex.what());
    }
    const TreeAbelianization a = tree_abelianization(*g, t);
    const auto ov = offtree_vectors(*g, t, a);
    if (!ov) return "an off-tree edge group is not cyclic";
    std::vector<std::string> ids;
    for (auto e : ov->edges) ids.push_back(g->graph.edges[e]);
    if (ids != c.edges || ov->vectors != c.vectors) return "recorded vectors differ";
    if (!nli_assignment(c.vectors, c.J)) return "J does not certify near linear independence";
    const NLICertificate fresh = make_nli(*g, t, a, *ov, c.J);
    if (fresh.extended_rank != c.extended_rank || fresh.relation_rank != c.relation_rank)
      return "recorded ranks differ";
    if (c.extended_rank != c.relation_rank + c.J.size()) return "J lifts are dependent";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const GramInfeasible& c) const {
    if (auto e = need_graph()) return e;
    if (v.status != Status::NOT_VRC) return "Gram infeasibility only refutes VRC";
    SpanningTree t;
    try {
      t = spanning_tree_from_edges(g->graph, c.tree);
    } catch (const std::invalid_argument& ex) {
      return std::string(ex.what());
    }
    const GramAnalysis ga = gram_obstruction(*g, t);
    if (!ga.obstruction || !ga.exact) return "no exact Gram obstruction on this tree";
    if (!(ga.obstruction->constraints == c.constraints) || ga.obstruction->d != c.d)
      return "recorded constraints differ";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const WitnessVerified& c) const {
    if (auto e = need_graph()) return e;
    if (v.status != Status::VRC) return "a witness only proves VRC";
    const auto t = c.witness.implied_tree(*g);
    if (!t) return "witness letters do not complement a spanning tree";
    if (t->tree_edge_ids(g->graph) != c.tree) return "recorded tree differs";
    if (!verify_witness(*g, *t, c.witness).passed()) return "witness fails verification";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const FamilyClosedForm& c) const {
    FamilyVerdicts fresh;
    try {
      fresh = family_verdicts(c.facts.family, c.facts.k, c.facts.l);
    } catch (const std::invalid_argument& ex) {
      return std::string(ex.what());
    }
    if (fresh.vrc != c.facts.vrc || fresh.lr != c.facts.lr || fresh.vfbc != c.facts.vfbc)
      return "recorded facts differ from the closed forms";
    switch (v.status) {
      case Status::VRC: return fresh.vrc ? std::nullopt : std::optional<std::string>("vrc is false");
      case Status::NOT_VRC: return !fresh.vrc ? std::nullopt : std::optional<std::string>("vrc is true");
      case Status::LR: return fresh.lr == true ? std::nullopt : std::optional<std::string>("lr is not true");
      case Status::NOT_LR: return fresh.lr == false ? std::nullopt : std::optional<std::string>("lr is not false");
      case Status::UNKNOWN: return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<std::string> operator()(const MatrixGroupFiniteness& c) const {
    FinitenessResult fresh;
    try {
      fresh = is_finite(c.gens);
    } catch (const std::invalid_argument& ex) {
      return std::string(ex.what());
    }
    if (fresh.finite != c.result.finite || fresh.order() != c.result.order())
      return "finiteness result differs";
    if (!fresh.finite) {
      const IntegerMatrix w = evaluate_word(c.gens, c.result.witness);
      try {
        if (!matrix_order(w).infinite && fresh.reason == "element of infinite order")
          return "recorded witness has finite order";
      } catch (const std::invalid_argument& ex) {
        return std::string(ex.what());
      }
    }
    if ((v.status == Status::LR) != fresh.finite) return "status disagrees with finiteness";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const AutomorphismOrder& c) const {
    if (c.matrix.rows() != c.n_group.dim() || c.matrix.cols() != c.n_group.dim())
      return "matrix shape does not match N";
    const AbHom eta(c.n_group, c.n_group, c.matrix);
    if (!eta.is_well_defined() || !is_injective(eta)) return "matrix is not an automorphism";
    const std::size_t r = c.n_group.free_rank;
    if (c.order.infinite) {
      if (v.status != Status::NOT_LR) return "infinite order refutes LR only";
      IntegerMatrix F(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) F(i, j) = c.matrix(i, j);
      try {
        if (r == 0 || !matrix_order(F).infinite) return "free block has finite order";
      } catch (const std::invalid_argument& ex) {
        return std::string(ex.what());
      }
      return std::nullopt;
    }
    if (v.status != Status::LR) return "finite order proves LR only";
    AbHom p = AbHom::identity(c.n_group);
    for (Integer i = 0; i < c.order.value; ++i) p = eta.compose_after(p);
    if (!(p == AbHom::identity(c.n_group))) return "matrix power is not the identity";
    return std::nullopt;
  }

  std::optional<std::string> operator()(const Attempted&) const {
    if (v.status != Status::UNKNOWN) return "attempt lists accompany UNKNOWN only";
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::string> replay(const Verdict& v, const GraphOfGroups* g) {
  return std::visit(Replayer{v, g}, v.certificate);
}

}  // namespace vrc
