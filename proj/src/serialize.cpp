#include "vrc/serialize.hpp"

#include <cstdint>
#include <limits>

namespace vrc {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& what) {
  throw InputError(ptr, what);
}

const Json& field(const Json& j, const std::string& ptr, const std::string& key) {
  if (!j.is_object()) fail(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(pointer_append(ptr, key), "missing field");
  return *it;
}

const Json& array_at(const Json& j, const std::string& ptr) {
  if (!j.is_array()) fail(ptr, "expected an array");
  return j;
}

std::string string_from(const Json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

bool bool_from(const Json& j, const std::string& ptr) {
  if (!j.is_boolean()) fail(ptr, "expected a boolean");
  return j.get<bool>();
}

std::size_t size_from(const Json& j, const std::string& ptr) {
  const Integer x = integer_from_json(j, ptr);
  if (x < 0 || !x.fits_ulong_p()) fail(ptr, "expected a non-negative integer");
  return x.get_ui();
}

long long_from(const Json& j, const std::string& ptr) {
  const Integer x = integer_from_json(j, ptr);
  if (!x.fits_slong_p()) fail(ptr, "integer out of range");
  return x.get_si();
}

std::vector<std::string> strings_from(const Json& j, const std::string& ptr) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i)
    out.push_back(string_from(j[i], pointer_append(ptr, i)));
  return out;
}

std::vector<std::size_t> sizes_from(const Json& j, const std::string& ptr) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i)
    out.push_back(size_from(j[i], pointer_append(ptr, i)));
  return out;
}

Json rvec_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

RationalVector rational_vector_from(const Json& j, const std::string& ptr) {
  RationalVector out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i)
    out.push_back(rational_from_json(j[i], pointer_append(ptr, i)));
  return out;
}

AbElement element_from(const FgAbGroup& g, const Json& j, const std::string& ptr) {
  IntVector c = int_vector_from_json(j, ptr);
  if (c.size() != g.dim()) fail(ptr, "expected " + std::to_string(g.dim()) + " coordinates");
  return AbElement(g, std::move(c));
}

Json order_to_json(const Order& o) { return o.infinite ? Json("infinity") : to_json(o.value); }

Order order_from(const Json& j, const std::string& ptr) {
  if (j.is_string() && j.get<std::string>() == "infinity") return Order::infinity();
  return Order::finite(integer_from_json(j, ptr));
}

Json tree_json(const std::vector<std::string>& t) {
  Json a = Json::array();
  for (const auto& s : t) a.push_back(s);
  return a;
}

}  // namespace

std::string pointer_append(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return ptr + "/" + k;
}

std::string pointer_append(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

// ---------------------------------------------------------------- scalars

Json to_json(const Integer& x) {
  if (x.fits_slong_p() && sizeof(long) == sizeof(std::int64_t))
    return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) fail(ptr, "expected an integer");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') fail(ptr, "expected an integer");
    return Integer(s);
  }
  fail(ptr, "expected an integer");
}

Json to_json(const Rational& x) {
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return Json(x.get_str());
}

Rational rational_from_json(const Json& j, const std::string& ptr) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Integer num = integer_from_json(Json(s.substr(0, slash)), ptr);
      const Integer den = integer_from_json(Json(s.substr(slash + 1)), ptr);
      if (den <= 0) fail(ptr, "denominator must be positive");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
  }
  return Rational(integer_from_json(j, ptr));
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

IntVector int_vector_from_json(const Json& j, const std::string& ptr) {
  IntVector out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i)
    out.push_back(integer_from_json(j[i], pointer_append(ptr, i)));
  return out;
}

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

IntegerMatrix matrix_from_json(const Json& j, const std::string& ptr, std::size_t cols) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) {
    IntVector r = int_vector_from_json(j[i], pointer_append(ptr, i));
    if (r.size() != cols)
      fail(pointer_append(ptr, i), "expected " + std::to_string(cols) + " entries");
    rows.push_back(std::move(r));
  }
  return rows.empty() ? IntegerMatrix(0, cols) : IntegerMatrix::from_rows(cols, rows);
}

IntegerMatrix matrix_from_json(const Json& j, const std::string& ptr) {
  array_at(j, ptr);
  if (j.empty()) return IntegerMatrix(0, 0);
  return matrix_from_json(j, ptr, array_at(j[0], pointer_append(ptr, 0)).size());
}

// ----------------------------------------------------------------- groups

Json to_json(const FgAbGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion) t.push_back(to_json(d));
  return Json{{"free_rank", g.free_rank}, {"torsion", t}};
}

FgAbGroup group_from_json(const Json& j, const std::string& ptr) {
  FgAbGroup g;
  g.free_rank = size_from(field(j, ptr, "free_rank"), pointer_append(ptr, "free_rank"));
  if (j.contains("torsion")) g.torsion = int_vector_from_json(j["torsion"], pointer_append(ptr, "torsion"));
  if (auto err = g.check()) fail(pointer_append(ptr, "torsion"), *err);
  return g;
}

// ----------------------------------------------------------------- graphs

Json to_json(const GraphOfGroups& g) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : g.vertex_specs()) vs.push_back({{"id", v.id}, {"group", to_json(v.group)}});
  for (const auto& e : g.edge_specs())
    es.push_back({{"id", e.id},
                  {"from", e.from},
                  {"to", e.to},
                  {"group", to_json(e.group)},
                  {"alpha", to_json(e.alpha)},
                  {"omega", to_json(e.omega)}});
  return Json{{"vertices", vs}, {"edges", es}};
}

GraphOfGroups graph_from_json(const Json& j) {
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  std::map<std::string, std::size_t> dims;
  const Json& vs = array_at(field(j, "", "vertices"), "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = pointer_append("/vertices", i);
    VertexSpec v{string_from(field(vs[i], p, "id"), p + "/id"),
                 group_from_json(field(vs[i], p, "group"), p + "/group")};
    dims[v.id] = v.group.dim();
    vertices.push_back(std::move(v));
  }
  const Json& es = array_at(field(j, "", "edges"), "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = pointer_append("/edges", i);
    EdgeSpec e;
    e.id = string_from(field(es[i], p, "id"), p + "/id");
    e.from = string_from(field(es[i], p, "from"), p + "/from");
    e.to = string_from(field(es[i], p, "to"), p + "/to");
    e.group = group_from_json(field(es[i], p, "group"), p + "/group");
    const std::size_t k = e.group.dim();
    e.alpha = matrix_from_json(field(es[i], p, "alpha"), p + "/alpha", k);
    e.omega = matrix_from_json(field(es[i], p, "omega"), p + "/omega", k);
    // An empty row list still has to match the vertex dimension.
    if (k == 0) {
      if (dims.count(e.from)) e.alpha = IntegerMatrix(dims[e.from], 0);
      if (dims.count(e.to)) e.omega = IntegerMatrix(dims[e.to], 0);
    }
    edges.push_back(std::move(e));
  }
  auto built = GraphOfGroups::build(std::move(vertices), std::move(edges));
  if (auto* v = std::get_if<std::vector<Violation>>(&built)) throw InputError(*v);
  return std::get<GraphOfGroups>(std::move(built));
}

Json to_json(const std::vector<Violation>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back({{"pointer", x.where}, {"message", x.what}});
  return a;
}

// ------------------------------------------------------------------ words

Json to_json(const GraphOfGroups& g, const Word& w) {
  Json a = Json::array();
  for (const Syllable& s : w) {
    if (const auto* v = std::get_if<VertexSyllable>(&s))
      a.push_back({{"v", g.graph.vertices[v->vertex]}, {"coeffs", to_json(v->element.coords())}});
    else {
      const auto& l = std::get<LetterSyllable>(s);
      a.push_back({{"t", g.graph.edges[l.edge]}, {"exp", l.exponent}});
    }
  }
  return a;
}

Word word_from_json(const GraphOfGroups& g, const Json& j) {
  Word w;
  for (std::size_t i = 0; i < array_at(j, "").size(); ++i) {
    const std::string p = pointer_append("", i);
    const Json& s = j[i];
    if (!s.is_object()) fail(p, "expected an object");
    if (s.contains("v")) {
      const std::string id = string_from(s["v"], p + "/v");
      auto v = g.graph.vertex_index(id);
      if (!v) fail(p + "/v", "unknown vertex '" + id + "'");
      w.push_back(VertexSyllable{*v, element_from(g.vertex_groups[*v], field(s, p, "coeffs"),
                                                  p + "/coeffs")});
    } else if (s.contains("t")) {
      const std::string id = string_from(s["t"], p + "/t");
      auto e = g.graph.edge_index(id);
      if (!e || !g.graph.is_positive(*e)) fail(p + "/t", "unknown positive edge '" + id + "'");
      const long x = long_from(field(s, p, "exp"), p + "/exp");
      if (x != 1 && x != -1) fail(p + "/exp", "exponent must be 1 or -1");
      w.push_back(LetterSyllable{*e, static_cast<int>(x)});
    } else {
      fail(p, "expected a \"v\" or \"t\" item");
    }
  }
  return w;
}

// -------------------------------------------------------------- witnesses

Json to_json(const AffineElement& x) {
  Integer den = 1;
  for (const auto& c : x.translation) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntVector num;
  for (const auto& c : x.translation) num.push_back(Integer(c * den));
  return Json{{"vec_num", to_json(num)}, {"vec_den", to_json(den)}, {"q", to_json(x.q)}};
}

AffineElement affine_from_json(const Json& j, const std::string& ptr, std::size_t n) {
  AffineElement x;
  const IntVector num = int_vector_from_json(field(j, ptr, "vec_num"), ptr + "/vec_num");
  if (num.size() != n) fail(ptr + "/vec_num", "expected " + std::to_string(n) + " entries");
  Integer den = 1;
  if (j.contains("vec_den")) den = integer_from_json(j["vec_den"], ptr + "/vec_den");
  if (den <= 0) fail(ptr + "/vec_den", "denominator must be positive");
  for (const auto& v : num) {
    Rational q(v, den);
    q.canonicalize();
    x.translation.push_back(q);
  }
  x.q = matrix_from_json(field(j, ptr, "q"), ptr + "/q", n);
  if (x.q.rows() != n) fail(ptr + "/q", "expected " + std::to_string(n) + " rows");
  return x;
}

Json to_json(const EuclideanWitness& w) {
  Json qs = Json::array();
  for (const auto& q : w.q_generators) qs.push_back(to_json(q));
  Json vi = Json::object(), li = Json::object();
  for (const auto& [id, imgs] : w.vertex_images) {
    Json a = Json::array();
    for (const auto& x : imgs) a.push_back(to_json(x));
    vi[id] = a;
  }
  for (const auto& [id, x] : w.letter_images) li[id] = to_json(x);
  return Json{{"n", w.n}, {"q_generators", qs}, {"vertex_images", vi}, {"letter_images", li}};
}

EuclideanWitness witness_from_json(const Json& j) {
  EuclideanWitness w;
  w.n = size_from(field(j, "", "n"), "/n");
  if (w.n == 0 || w.n > kMaxMatrixDimension) fail("/n", "n must lie in 1.." + std::to_string(kMaxMatrixDimension));
  const Json& qs = array_at(field(j, "", "q_generators"), "/q_generators");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const std::string p = pointer_append("/q_generators", i);
    IntegerMatrix q = matrix_from_json(qs[i], p, w.n);
    if (q.rows() != w.n) fail(p, "expected " + std::to_string(w.n) + " rows");
    w.q_generators.push_back(std::move(q));
  }
  const Json& vi = field(j, "", "vertex_images");
  if (!vi.is_object()) fail("/vertex_images", "expected an object");
  for (const auto& [id, imgs] : vi.items()) {
    const std::string p = pointer_append("/vertex_images", id);
    std::vector<AffineElement> out;
    for (std::size_t i = 0; i < array_at(imgs, p).size(); ++i)
      out.push_back(affine_from_json(imgs[i], pointer_append(p, i), w.n));
    w.vertex_images[id] = std::move(out);
  }
  const Json& li = field(j, "", "letter_images");
  if (!li.is_object()) fail("/letter_images", "expected an object");
  for (const auto& [id, x] : li.items())
    w.letter_images[id] = affine_from_json(x, pointer_append("/letter_images", id), w.n);
  return w;
}

Json to_json(const VerificationReport& r) {
  Json inj = Json::object(), freeinj = Json::object(), ker = Json::object();
  for (const auto& [v, ok] : r.injective_per_vertex) inj[v] = ok;
  for (const auto& [v, ok] : r.free_part_injective_per_vertex) freeinj[v] = ok;
  for (const auto& [v, gens] : r.kernel_generators) {
    Json a = Json::array();
    for (const auto& x : gens) a.push_back(to_json(x));
    ker[v] = a;
  }
  return Json{{"passed", r.passed()},
              {"structure_errors", r.structure_errors},
              {"relations_ok", r.relations_ok},
              {"relation_failures", r.relation_failures},
              {"q_finite", r.q_finite},
              {"q_order", r.q_order ? Json(*r.q_order) : Json(nullptr)},
              {"injectivity_checked", r.injectivity_checked},
              {"injective_per_vertex", inj},
              {"free_part_injective_per_vertex", freeinj},
              {"kernel_generators", ker}};
}

Json to_json(const FinitenessResult& r) {
  Json els = Json::array();
  for (const auto& m : r.elements) els.push_back(to_json(m));
  return Json{{"finite", r.finite},
              {"order", r.finite ? Json(r.order()) : Json(nullptr)},
              {"elements", els},
              {"witness", r.witness},
              {"reason", r.reason}};
}

Json to_json(const FamilyVerdicts& f) {
  Json j{{"family", to_string(f.family)}, {"k", f.k}};
  if (f.family == Family::BS || f.family == Family::GKL) j["l"] = f.l;
  j["vrc"] = f.vrc;
  if (f.lr) j["lr"] = *f.lr;
  if (f.vfbc) j["virtually_free_by_cyclic"] = *f.vfbc;
  j["encoding"] = f.encoding ? to_json(*f.encoding) : Json(nullptr);
  return j;
}

// ----------------------------------------------------------- certificates

Json to_json(const Certificate& c) {
  Json j{{"type", certificate_type(c)}};
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BalancedCycle>) {
          j["tree"] = tree_json(x.tree);
          j["edge"] = x.edge;
          j["group"] = to_json(x.a.group());
          j["a"] = to_json(x.a.coords());
          j["b"] = to_json(x.b.coords());
          j["trivial_intersection"] = x.trivial_intersection;
          j["power"] = x.power ? Json{{"m", to_json(x.power->m)}, {"epsilon", x.power->epsilon}}
                               : Json(nullptr);
        } else if constexpr (std::is_same_v<T, NotBalanced>) {
          j["tree"] = tree_json(x.tree);
          j["edge"] = x.edge;
          j["group"] = to_json(x.a.group());
          j["a"] = to_json(x.a.coords());
          j["b"] = to_json(x.b.coords());
        } else if constexpr (std::is_same_v<T, NLICertificate>) {
          j["tree"] = tree_json(x.tree);
          j["edges"] = x.edges;
          Json vs = Json::array();
          for (const auto& v : x.vectors) vs.push_back(rvec_json(v));
          j["vectors"] = vs;
          j["J"] = x.J;
          j["extended_rank"] = x.extended_rank;
          j["relation_rank"] = x.relation_rank;
        } else if constexpr (std::is_same_v<T, GramInfeasible>) {
          j["tree"] = tree_json(x.tree);
          j["d"] = x.d;
          j["unknowns"] = x.constraints.cols();
          j["constraints"] = to_json(x.constraints);
          j["reason"] = x.reason;
        } else if constexpr (std::is_same_v<T, WitnessVerified>) {
          j["tree"] = tree_json(x.tree);
          j["source"] = x.source;
          j["witness"] = to_json(x.witness);
        } else if constexpr (std::is_same_v<T, FamilyClosedForm>) {
          Json f = to_json(x.facts);
          f.erase("encoding");
          j["facts"] = f;
        } else if constexpr (std::is_same_v<T, MatrixGroupFiniteness>) {
          j["n"] = x.gens.n;
          Json g = Json::array();
          for (const auto& m : x.gens.generators) g.push_back(to_json(m));
          j["generators"] = g;
          j["result"] = to_json(x.result);
        } else if constexpr (std::is_same_v<T, AutomorphismOrder>) {
          j["n_group"] = to_json(x.n_group);
          j["matrix"] = to_json(x.matrix);
          j["order"] = order_to_json(x.order);
        } else if constexpr (std::is_same_v<T, Attempted>) {
          j["criteria"] = x.criteria;
        }
      },
      c);
  return j;
}

Certificate certificate_from_json(const Json& j, const std::string& ptr) {
  const std::string type = string_from(field(j, ptr, "type"), ptr + "/type");
  auto at = [&](const std::string& k) -> const Json& { return field(j, ptr, k); };
  auto p = [&](const std::string& k) { return pointer_append(ptr, k); };
  if (type == "TreeCriterion") return TreeCriterion{};
  if (type == "BalancedCycle" || type == "NotBalanced") {
    const FgAbGroup g = group_from_json(at("group"), p("group"));
    const AbElement a = element_from(g, at("a"), p("a"));
    const AbElement b = element_from(g, at("b"), p("b"));
    const auto tree = strings_from(at("tree"), p("tree"));
    const std::string edge = string_from(at("edge"), p("edge"));
    if (type == "NotBalanced") return NotBalanced{tree, edge, a, b};
    BalancedCycle c{tree, edge, a, b, bool_from(at("trivial_intersection"), p("trivial_intersection")),
                    std::nullopt};
    const Json& pw = at("power");
    if (!pw.is_null())
      c.power = PowerConjugacy{integer_from_json(field(pw, p("power"), "m"), p("power") + "/m"),
                               static_cast<int>(long_from(field(pw, p("power"), "epsilon"),
                                                          p("power") + "/epsilon"))};
    return c;
  }
  if (type == "NLI") {
    NLICertificate c;
    c.tree = strings_from(at("tree"), p("tree"));
    c.edges = strings_from(at("edges"), p("edges"));
    const Json& vs = array_at(at("vectors"), p("vectors"));
    for (std::size_t i = 0; i < vs.size(); ++i)
      c.vectors.push_back(rational_vector_from(vs[i], pointer_append(p("vectors"), i)));
    c.J = sizes_from(at("J"), p("J"));
    c.extended_rank = size_from(at("extended_rank"), p("extended_rank"));
    c.relation_rank = size_from(at("relation_rank"), p("relation_rank"));
    return c;
  }
  if (type == "GramInfeasible") {
    GramInfeasible c;
    c.tree = strings_from(at("tree"), p("tree"));
    c.d = size_from(at("d"), p("d"));
    c.constraints = matrix_from_json(at("constraints"), p("constraints"),
                                     size_from(at("unknowns"), p("unknowns")));
    c.reason = string_from(at("reason"), p("reason"));
    return c;
  }
  if (type == "WitnessVerified") {
    WitnessVerified c;
    c.tree = strings_from(at("tree"), p("tree"));
    c.source = string_from(at("source"), p("source"));
    try {
      c.witness = witness_from_json(at("witness"));
    } catch (InputError& e) {
      for (auto& v : e.violations) v.where = p("witness") + v.where;
      throw;
    }
    return c;
  }
  if (type == "FamilyClosedForm") {
    const Json& f = at("facts");
    const std::string fp = p("facts");
    FamilyClosedForm c;
    auto fam = family_from_string(string_from(field(f, fp, "family"), fp + "/family"));
    if (!fam) fail(fp + "/family", "unknown family");
    c.facts.family = *fam;
    c.facts.k = long_from(field(f, fp, "k"), fp + "/k");
    if (f.contains("l")) c.facts.l = long_from(f["l"], fp + "/l");
    c.facts.vrc = bool_from(field(f, fp, "vrc"), fp + "/vrc");
    if (f.contains("lr")) c.facts.lr = bool_from(f["lr"], fp + "/lr");
    if (f.contains("virtually_free_by_cyclic"))
      c.facts.vfbc = bool_from(f["virtually_free_by_cyclic"], fp + "/virtually_free_by_cyclic");
    return c;
  }
  if (type == "MatrixGroupFiniteness") {
    MatrixGroupFiniteness c;
    c.gens.n = size_from(at("n"), p("n"));
    const Json& gs = array_at(at("generators"), p("generators"));
    for (std::size_t i = 0; i < gs.size(); ++i)
      c.gens.generators.push_back(matrix_from_json(gs[i], pointer_append(p("generators"), i), c.gens.n));
    const Json& r = at("result");
    const std::string rp = p("result");
    c.result.finite = bool_from(field(r, rp, "finite"), rp + "/finite");
    const Json& els = array_at(field(r, rp, "elements"), rp + "/elements");
    for (std::size_t i = 0; i < els.size(); ++i)
      c.result.elements.push_back(matrix_from_json(els[i], pointer_append(rp + "/elements", i), c.gens.n));
    c.result.witness = sizes_from(field(r, rp, "witness"), rp + "/witness");
    c.result.reason = string_from(field(r, rp, "reason"), rp + "/reason");
    return c;
  }
  if (type == "AutomorphismOrder") {
    AutomorphismOrder c;
    c.n_group = group_from_json(at("n_group"), p("n_group"));
    c.matrix = matrix_from_json(at("matrix"), p("matrix"), c.n_group.dim());
    c.order = order_from(at("order"), p("order"));
    return c;
  }
  if (type == "Attempted") return Attempted{strings_from(at("criteria"), p("criteria"))};
  fail(ptr + "/type", "unknown certificate type '" + type + "'");
}

Json to_json(const Verdict& v) {
  return Json{{"status", to_string(v.status)},
              {"certificate", to_json(v.certificate)},
              {"notes", v.notes}};
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  auto s = status_from_string(string_from(field(j, "", "status"), "/status"));
  if (!s) fail("/status", "unknown status");
  v.status = *s;
  v.certificate = certificate_from_json(field(j, "", "certificate"), "/certificate");
  if (j.contains("notes")) v.notes = strings_from(j["notes"], "/notes");
  return v;
}

}  // namespace vrc
