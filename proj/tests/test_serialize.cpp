#include <doctest.h>

#include <functional>
#include <set>

#include "support.hpp"

using namespace vrc;
using namespace vrc::testing;

namespace {

std::string pointer_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.violations.empty() ? "" : e.violations.front().where;
  }
  return "<no error>";
}

Json sample_graph_json() { return load_json("ex9.json"); }

}  // namespace

TEST_CASE("integers: small as numbers, large as strings") {
  CHECK(to_json(Integer(-7)) == Json(-7));
  const Integer big("123456789012345678901234567890");
  CHECK(to_json(big) == Json("123456789012345678901234567890"));
  CHECK(integer_from_json(to_json(big), "") == big);
  CHECK(integer_from_json(Json("-42"), "") == -42);
  CHECK(pointer_of([] { integer_from_json(Json("4x"), "/a"); }) == "/a");
  CHECK(pointer_of([] { integer_from_json(Json(1.5), "/b"); }) == "/b");
}

TEST_CASE("rationals") {
  CHECK(to_json(Rational(3)) == Json(3));
  Rational half(1, 2);
  CHECK(to_json(half) == Json("1/2"));
  CHECK(rational_from_json(Json("2/4"), "") == half);
  CHECK(rational_from_json(Json("-6/3"), "") == Rational(-2));
  CHECK(pointer_of([] { rational_from_json(Json("1/0"), "/r"); }) == "/r");
}

TEST_CASE("json pointer escaping") {
  CHECK(pointer_append("", "a/b") == "/a~1b");
  CHECK(pointer_append("/x", "t~") == "/x/t~0");
  CHECK(pointer_append("/edges", 3) == "/edges/3");
}

TEST_CASE("graphs round-trip") {
  for (const char* f : {"ex9.json", "path3.json", "torsion_tree.json", "gersten.json", "rank3.json"}) {
    CAPTURE(f);
    const GraphOfGroups g = load_graph(f);
    const Json j = to_json(g);
    CHECK(to_json(graph_from_json(j)) == j);
  }
  std::mt19937 rng(81);
  for (int i = 0; i < 30; ++i) {
    const GraphOfGroups g = random_tree_graph(rng);
    CHECK(to_json(graph_from_json(to_json(g))) == to_json(g));
  }
}

TEST_CASE("graph errors carry pointers") {
  Json j = sample_graph_json();
  j["edges"][0]["alpha"] = Json::array({Json::array({1, 2})});
  CHECK(pointer_of([&] { graph_from_json(j); }).rfind("/edges/0/alpha", 0) == 0);

  Json k = sample_graph_json();
  k["edges"][1].erase("from");
  CHECK(pointer_of([&] { graph_from_json(k); }) == "/edges/1/from");

  Json t = sample_graph_json();
  t["vertices"][0]["group"]["torsion"] = Json::array({1});
  CHECK(pointer_of([&] { graph_from_json(t); }) == "/vertices/0/group/torsion");

  CHECK(pointer_of([] { graph_from_json(Json::object()); }) == "/vertices");
}

TEST_CASE("words round-trip and report bad items") {
  const GraphOfGroups g = gk_encoding(0);
  const Word w = word_from_json(g, load_json("gk0_word.json"));
  CHECK(w.size() == 4);
  CHECK(to_json(g, w) == load_json("gk0_word.json"));
  CHECK(pointer_of([&] { word_from_json(g, Json::parse(R"([{"t":"s","exp":2}])")); }) == "/0/exp");
  CHECK(pointer_of([&] { word_from_json(g, Json::parse(R"([{"v":"w","coeffs":[1,0]}])")); }) == "/0/v");
  CHECK(pointer_of([&] { word_from_json(g, Json::parse(R"([{},{"v":"v","coeffs":[1]}])")); }) == "/0");
  CHECK(pointer_of([&] { word_from_json(g, Json::parse(R"([{"v":"v","coeffs":[1]}])")); }) == "/0/coeffs");
  CHECK(pointer_of([&] { word_from_json(g, Json::parse(R"([{"t":"t~","exp":1}])")); }) == "/0/t");
}

TEST_CASE("witnesses round-trip") {
  const Json j = load_json("rank3_witness.json");
  const EuclideanWitness w = witness_from_json(j);
  CHECK(to_json(witness_from_json(to_json(w))) == to_json(w));
  for (int k : {-1, 0, 1}) {
    const EuclideanWitness b = builtin_gk_witness(k);
    const EuclideanWitness r = witness_from_json(to_json(b));
    CHECK(r.n == b.n);
    CHECK(r.q_generators == b.q_generators);
    CHECK(to_json(r) == to_json(b));
  }
}

TEST_CASE("witness translations keep exact rationals") {
  EuclideanWitness w;
  w.n = 1;
  w.vertex_images["v"] = {AffineElement{{Rational(1, 3)}, IntegerMatrix::identity(1)}};
  const Json j = to_json(w);
  const EuclideanWitness r = witness_from_json(j);
  CHECK(r.vertex_images.at("v")[0].translation[0] == Rational(1, 3));
}

TEST_CASE("verdicts round-trip for every certificate type") {
  std::vector<Verdict> vs;
  for (const char* f : {"path3.json", "bks.json", "bs_2_3.json", "ex9.json", "gk2.json", "gersten.json"})
    vs.push_back(decide_vrc(load_graph(f)));
  VrcOptions o;
  o.witnesses.push_back(witness_from_json(load_json("rank3_witness.json")));
  vs.push_back(decide_vrc(load_graph("rank3.json"), o));
  vs.push_back(decide_vrc(gk_encoding(1)));
  const FamilyVerdicts f = family_verdicts(Family::BS, 2, 3);
  vs.push_back(Verdict{Status::NOT_VRC, FamilyClosedForm{f}, {"closed form"}});
  const IntegerMatrix swap{{0, 1}, {1, 0}};
  vs.push_back(decide_lr_amalgam_virtZn(2, swap, IntegerMatrix{{0, -1}, {-1, 0}}));
  vs.push_back(decide_lr_amalgam_virtZn(2, swap, IntegerMatrix{{-1, 0}, {2, 1}}));
  const FgAbGroup z = FgAbGroup::free(1);
  vs.push_back(decide_lr_hnn_abelian(z, {AbElement(z, ivec({2}))}, {AbElement(z, ivec({-2}))}));

  std::set<std::string> kinds;
  for (const Verdict& v : vs) {
    const Json j = to_json(v);
    CAPTURE(j.dump());
    const Verdict r = verdict_from_json(j);
    CHECK(r.status == v.status);
    CHECK(certificate_type(r.certificate) == certificate_type(v.certificate));
    CHECK(to_json(r) == j);
    kinds.insert(certificate_type(v.certificate));
  }
  CHECK(kinds.size() == 10);
}

TEST_CASE("replay works on deserialized verdicts") {
  for (const char* f : {"bks.json", "bs_2_3.json", "ex9.json", "gk2.json"}) {
    const GraphOfGroups g = load_graph(f);
    const Verdict v = verdict_from_json(to_json(decide_vrc(g)));
    CHECK(!replay(v, &g));
  }
}

TEST_CASE("malformed verdicts are rejected") {
  CHECK(pointer_of([] { verdict_from_json(Json::parse(R"({"status":"MAYBE"})")); }) == "/status");
  CHECK(pointer_of([] {
          verdict_from_json(Json::parse(R"({"status":"VRC","certificate":{"type":"Nope"}})"));
        }).rfind("/certificate", 0) == 0);
}
