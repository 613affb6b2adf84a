#include "vrc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "vrc/serialize.hpp"

namespace vrc {

namespace {

struct Options {
  std::string input;
  std::string word;
  std::string witness;
  std::string tree;
  bool all_trees = false;
  std::size_t tree_cap = 256;
  std::string format = "text";
  bool quiet = false;
  std::string name;
  long k = 0;
  long l = 0;
  std::string edge;
};

Json read_json(const std::string& path, const std::string& flag) {
  if (path.empty()) throw InputError("", flag + " is required");
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("", path + ": " + e.what());
  }
}

// Prefixes every pointer with the file it came from.
template <typename F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (InputError& e) {
    for (auto& v : e.violations) v.where = path + "#" + v.where;
    throw;
  }
}

GraphOfGroups load_graph(const Options& o) {
  const Json j = read_json(o.input, "--input");
  return in_file(o.input, [&] { return graph_from_json(j); });
}

GraphOfGroups load_valid_graph(const Options& o) {
  GraphOfGroups g = load_graph(o);
  if (auto v = validate(g); !v.empty()) {
    for (auto& x : v) x.where = o.input + "#" + x.where;
    throw InputError(v);
  }
  return g;
}

std::vector<std::string> tree_ids_from_file(const std::string& path) {
  const Json j = read_json(path, "--tree");
  return in_file(path, [&] {
    const Json& list = j.is_object() && j.contains("tree") ? j["tree"] : j;
    if (!list.is_array()) throw InputError("", "expected a list of edge ids");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_string()) throw InputError(pointer_append("", i), "expected a string");
      ids.push_back(list[i].get<std::string>());
    }
    return ids;
  });
}

SpanningTree pick_tree(const GraphOfGroups& g, const Options& o) {
  if (o.tree.empty() || o.tree == "canonical") return canonical_spanning_tree(g.graph);
  try {
    return spanning_tree_from_edges(g.graph, tree_ids_from_file(o.tree));
  } catch (const std::invalid_argument& e) {
    throw InputError(o.tree + "#", e.what());
  }
}

std::string element_text(const AbElement& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords().size(); ++i) s += (i ? "," : "") + x[i].get_str();
  return s + ")";
}

std::string word_text(const GraphOfGroups& g, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Syllable& x : w) {
    if (!s.empty()) s += " ";
    if (const auto* v = std::get_if<VertexSyllable>(&x))
      s += g.graph.vertices[v->vertex] + element_text(v->element);
    else {
      const auto& l = std::get<LetterSyllable>(x);
      s += g.graph.edges[l.edge] + (l.exponent > 0 ? "" : "^-1");
    }
  }
  return s;
}

void print_verdict_text(const Verdict& v, const Options& o, std::ostream& out) {
  out << "status: " << to_string(v.status) << "\n";
  out << "certificate: " << certificate_type(v.certificate) << "\n";
  if (const auto* c = std::get_if<GramInfeasible>(&v.certificate)) out << "reason: " << c->reason << "\n";
  if (const auto* c = std::get_if<NLICertificate>(&v.certificate))
    out << "extended rank: " << c->extended_rank << " (relations " << c->relation_rank << ")\n";
  if (const auto* c = std::get_if<Attempted>(&v.certificate)) {
    out << "attempted:";
    for (const auto& s : c->criteria) out << " " << s;
    out << "\n";
  }
  if (!o.quiet)
    for (const auto& n : v.notes) out << "  " << n << "\n";
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  (void)o;
  out << j.dump(2) << "\n";
}

void emit_verdict(const Verdict& v, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    Json j = to_json(v);
    if (o.quiet) j.erase("notes");
    out << j.dump(2) << "\n";
  } else {
    print_verdict_text(v, o, out);
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_graph(o);
  auto v = validate(g);
  if (!v.empty()) {
    for (auto& x : v) x.where = o.input + "#" + x.where;
    throw InputError(v);
  }
  if (o.format == "json") emit(Json{{"valid", true}}, o, out);
  else out << "valid\n";
  return 0;
}

int cmd_vrc(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  VrcOptions vo;
  vo.tree_cap = o.tree_cap;
  if (!o.all_trees && !o.tree.empty()) {
    if (o.tree == "canonical") {
      vo.tree_mode = VrcOptions::TreeMode::Canonical;
    } else {
      vo.tree_mode = VrcOptions::TreeMode::Explicit;
      vo.tree_edges = tree_ids_from_file(o.tree);
    }
  }
  if (!o.witness.empty()) {
    const Json j = read_json(o.witness, "--witness");
    vo.witnesses.push_back(in_file(o.witness, [&] { return witness_from_json(j); }));
  }
  emit_verdict(decide_vrc(g, vo), o, out);
  return 0;
}

int cmd_lr_amalgam(const Options& o, std::ostream& out) {
  const Json j = read_json(o.input, "--input");
  auto [n, x, y] = in_file(o.input, [&] {
    if (!j.is_object() || !j.contains("n")) throw InputError("/n", "missing field");
    const Integer ni = integer_from_json(j["n"], "/n");
    if (ni < 1 || ni > 64) throw InputError("/n", "n out of range");
    const std::size_t n = ni.get_ui();
    if (!j.contains("x")) throw InputError("/x", "missing field");
    if (!j.contains("y")) throw InputError("/y", "missing field");
    IntegerMatrix x = matrix_from_json(j["x"], "/x", n), y = matrix_from_json(j["y"], "/y", n);
    if (x.rows() != n) throw InputError("/x", "expected " + std::to_string(n) + " rows");
    if (y.rows() != n) throw InputError("/y", "expected " + std::to_string(n) + " rows");
    return std::tuple{n, x, y};
  });
  emit_verdict(decide_lr_amalgam_virtZn(n, x, y), o, out);
  return 0;
}

int cmd_lr_hnn(const Options& o, std::ostream& out) {
  const Json j = read_json(o.input, "--input");
  if (j.is_object() && j.contains("vertices")) {
    const GraphOfGroups g = load_valid_graph(o);
    emit_verdict(decide_lr_single_hnn(g), o, out);
    return 0;
  }
  auto [A, ngens, images] = in_file(o.input, [&] {
    if (!j.is_object() || !j.contains("group")) throw InputError("/group", "missing field");
    const FgAbGroup A = group_from_json(j["group"], "/group");
    std::vector<AbElement> ngens, images;
    for (const char* key : {"n_generators", "xi_images"}) {
      const std::string p = std::string("/") + key;
      if (!j.contains(key) || !j[key].is_array()) throw InputError(p, "expected an array");
      for (std::size_t i = 0; i < j[key].size(); ++i) {
        IntVector c = int_vector_from_json(j[key][i], pointer_append(p, i));
        if (c.size() != A.dim())
          throw InputError(pointer_append(p, i), "expected " + std::to_string(A.dim()) + " coordinates");
        (std::string(key) == "n_generators" ? ngens : images).emplace_back(A, std::move(c));
      }
    }
    return std::tuple{A, ngens, images};
  });
  emit_verdict(decide_lr_hnn_abelian(A, ngens, images), o, out);
  return 0;
}

int cmd_balanced(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  if (euler_characteristic(g.graph) != 0)
    throw InputError(o.input + "#/edges", "the balanced test needs exactly one cycle");
  for (const SpanningTree& t : enumerate_spanning_trees(g.graph, o.tree_cap).trees) {
    const std::size_t e = t.offtree_positive().front();
    if (!o.edge.empty() ? g.graph.edges[e] != o.edge : !g.edge_groups[e].is_cyclic()) continue;
    if (!g.edge_groups[e].is_cyclic())
      throw InputError(o.input + "#/edges", "edge '" + o.edge + "' has a non-cyclic edge group");
    const BalanceResult b = balanced_offtree_cycle(g, t, e);
    if (o.format == "json")
      emit(Json{{"balanced", b.balanced}, {"certificate", to_json(b.certificate)}}, o, out);
    else
      out << (b.balanced ? "balanced" : "not balanced") << " (edge " << g.graph.edges[e]
          << ", certificate " << certificate_type(b.certificate) << ")\n";
    return 0;
  }
  throw InputError(o.input + "#/edges", o.edge.empty() ? "no cycle edge has a cyclic edge group"
                                                       : "edge '" + o.edge + "' is not on the cycle");
}

Word load_word(const GraphOfGroups& g, const BrittonContext& ctx, const Options& o) {
  const Json j = read_json(o.word, "--word");
  Word w = in_file(o.word, [&] { return word_from_json(g, j); });
  if (auto e = ctx.check(w)) throw InputError(o.word + "#", *e);
  return w;
}

int cmd_word(const std::string& cmd, const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  const BrittonContext ctx(g, pick_tree(g, o));
  const Word w = load_word(g, ctx, o);
  if (cmd == "reduce") {
    const Word r = ctx.reduce(w);
    if (o.format == "json") emit(to_json(g, r), o, out);
    else out << word_text(g, r) << "\n";
  } else if (cmd == "order") {
    const Order ord = ctx.word_order(w);
    if (o.format == "json") emit(Json{{"order", ord.infinite ? Json("infinity") : to_json(ord.value)}}, o, out);
    else out << "order: " << ord.to_string() << "\n";
  } else {
    const Classification c = ctx.classify(w);
    if (const auto* e = std::get_if<Elliptic>(&c)) {
      if (o.format == "json")
        emit(Json{{"type", "elliptic"},
                  {"vertex", g.graph.vertices[e->vertex]},
                  {"representative", to_json(e->representative.coords())}},
             o, out);
      else
        out << "elliptic: conjugate into " << g.graph.vertices[e->vertex] << " as "
            << element_text(e->representative) << "\n";
    } else {
      const CyclicReduction cr = ctx.cyclically_reduce(w);
      if (o.format == "json")
        emit(Json{{"type", "hyperbolic"}, {"cyclically_reduced", to_json(g, cr.word)}}, o, out);
      else
        out << "hyperbolic: cyclically reduced " << word_text(g, cr.word) << "\n";
    }
  }
  return 0;
}

int cmd_witness_build(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  const SpanningTree t = pick_tree(g, o);
  const TreeAbelianization a = tree_abelianization(g, t);
  const auto ov = offtree_vectors(g, t, a);
  if (!ov) throw InputError(o.input + "#/edges", "an off-tree edge group is not cyclic");
  const auto J = near_lin_indep(ov->vectors);
  if (!J) throw InputError(o.input + "#/edges", "off-tree images are not nearly linearly independent");
  emit(to_json(build_nli_witness(g, t, *J)), o, out);
  return 0;
}

int cmd_witness_verify(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  const Json j = read_json(o.witness, "--witness");
  const EuclideanWitness w = in_file(o.witness, [&] { return witness_from_json(j); });
  SpanningTree t;
  if (!o.tree.empty()) {
    t = pick_tree(g, o);
  } else if (auto it = w.implied_tree(g)) {
    t = *it;
  } else {
    throw InputError(o.witness + "#/letter_images", "letters do not complement a spanning tree");
  }
  const VerificationReport r = verify_witness(g, t, w);
  if (o.format == "json") {
    emit(to_json(r), o, out);
  } else {
    out << (r.passed() ? "passed" : "failed") << "\n";
    if (!o.quiet) {
      for (const auto& s : r.structure_errors) out << "  structure: " << s << "\n";
      for (const auto& s : r.relation_failures) out << "  relation: " << s << "\n";
      if (r.structure_errors.empty()) {
        out << "  Q finite: " << (r.q_finite ? "yes" : "no");
        if (r.q_order) out << " (order " << *r.q_order << ")";
        out << "\n";
        if (!r.injectivity_checked) out << "  injectivity: not checked\n";
        for (const auto& [v, ok] : r.injective_per_vertex)
          out << "  injective on " << v << ": " << (ok ? "yes" : "no") << "\n";
      }
    }
  }
  return 0;
}

int cmd_family(const Options& o, std::ostream& out) {
  auto f = family_from_string(o.name);
  if (!f) throw InputError("--name", "unknown family '" + o.name + "' (bs, gk, gkl, hk)");
  FamilyVerdicts v;
  try {
    v = family_verdicts(*f, o.k, o.l);
  } catch (const std::invalid_argument& e) {
    throw InputError("--k", e.what());
  }
  if (o.format == "json") {
    emit(to_json(v), o, out);
  } else {
    out << "vrc: " << (v.vrc ? "true" : "false") << "\n";
    if (v.lr) out << "lr: " << (*v.lr ? "true" : "false") << "\n";
    if (v.vfbc) out << "virtually free-by-cyclic: " << (*v.vfbc ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_abelianize(const Options& o, std::ostream& out) {
  const GraphOfGroups g = load_valid_graph(o);
  const SpanningTree t = pick_tree(g, o);
  const TreeAbelianization a = tree_abelianization(g, t);
  Json maps = Json::object();
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    maps[g.graph.vertices[v]] = to_json(a.vertex_maps[v].images());
  Json tree = Json::array();
  for (const auto& id : t.tree_edge_ids(g.graph)) tree.push_back(id);
  if (o.format == "json")
    emit(Json{{"tree", tree}, {"group", to_json(a.group)}, {"vertex_maps", maps}}, o, out);
  else
    out << "A = " << a.group.to_string() << "\n";
  return 0;
}

void report(const std::vector<Violation>& v, const std::string& msg, const Options& o,
            std::ostream& err) {
  if (o.format == "json") {
    err << Json{{"error", msg}, {"violations", to_json(v)}}.dump(2) << "\n";
    return;
  }
  err << "error: " << msg << "\n";
  for (const auto& x : v) err << "  " << (x.where.empty() ? "/" : x.where) << ": " << x.what << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide (VRC) and (LR) for graphs of abelian groups", "vrcdec"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--input", o.input, "input document (graph of groups or matrix data)");
  app.add_option("--word", o.word, "word document");
  app.add_option("--witness", o.witness, "witness document");
  app.add_option("--tree", o.tree, "'canonical' or a file with a list of tree edge ids");
  app.add_flag("--all-trees", o.all_trees, "exhaust spanning trees (default for vrc)");
  app.add_option("--tree-cap", o.tree_cap, "maximum number of spanning trees")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--quiet", o.quiet, "suppress the human-readable trace");
  app.add_option("--name", o.name, "family: bs, gk, gkl or hk");
  app.add_option("--k", o.k, "family parameter k");
  app.add_option("--l", o.l, "family parameter l");
  app.add_option("--edge", o.edge, "cycle edge for the balanced test");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check the graph-of-groups axioms"},
      {"vrc", "decide (VRC)"},
      {"lr-amalgam", "decide (LR) for an amalgam of virtually Z^n groups"},
      {"lr-hnn", "decide (LR) for an HNN extension of an abelian group"},
      {"balanced", "balanced test for a graph with one cycle"},
      {"reduce", "reduce a word"},
      {"order", "order of a word"},
      {"classify", "elliptic or hyperbolic"},
      {"witness-build", "build a witness from near linear independence"},
      {"witness-verify", "verify a witness"},
      {"family", "closed-form verdicts for BS, G_k, G_kl, H_k"},
      {"abelianize", "tree abelianization"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (cmd == "validate") return cmd_validate(o, out);
    if (cmd == "vrc") return cmd_vrc(o, out);
    if (cmd == "lr-amalgam") return cmd_lr_amalgam(o, out);
    if (cmd == "lr-hnn") return cmd_lr_hnn(o, out);
    if (cmd == "balanced") return cmd_balanced(o, out);
    if (cmd == "reduce" || cmd == "order" || cmd == "classify") return cmd_word(cmd, o, out);
    if (cmd == "witness-build") return cmd_witness_build(o, out);
    if (cmd == "witness-verify") return cmd_witness_verify(o, out);
    if (cmd == "family") return cmd_family(o, out);
    if (cmd == "abelianize") return cmd_abelianize(o, out);
  } catch (const InputError& e) {
    report(e.violations, "invalid input", o, err);
    return 2;
  } catch (const PreconditionError& e) {
    std::vector<Violation> v = e.violations;
    for (auto& x : v) x.where = o.input + "#" + x.where;
    if (v.empty()) v.push_back({o.input + "#", e.what()});
    report(v, e.what(), o, err);
    return 2;
  } catch (const std::invalid_argument& e) {
    report({{o.input + "#", e.what()}}, e.what(), o, err);
    return 2;
  }
  return 2;
}

}  // namespace vrc
