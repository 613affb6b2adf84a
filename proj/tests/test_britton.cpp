#include <doctest.h>

#include "support.hpp"

using namespace vrc;
using namespace vrc::testing;

namespace {

BrittonContext context(const GraphOfGroups& g) { return BrittonContext(g, canonical_spanning_tree(g.graph)); }

Word conj(const Word& u, const Word& w) { return concat(concat(u, w), inverse(u)); }

bool same_element(const BrittonContext& ctx, const Word& a, const Word& b) {
  return ctx.is_trivial(concat(a, inverse(b)));
}

const std::vector<std::string> kFixtures = {"path3.json", "ex9.json",  "gk0.json",     "gk2.json",
                                            "bs_2_3.json", "bks.json", "torsion_tree.json", "gersten.json"};

}  // namespace

TEST_CASE("transport in the path of length three") {
  const GraphOfGroups g = load_graph("path3.json");
  const BrittonContext ctx = context(g);
  const std::size_t ab = vertex_of(g, "ab"), bc = vertex_of(g, "bc"), cd = vertex_of(g, "cd");
  const AbElement b = element(g, ab, {0, 1});
  CHECK(ctx.transport(ab, b, ab) == b);
  CHECK(ctx.transport(ab, b, bc) == element(g, bc, {1, 0}));
  CHECK(!ctx.transport(ab, element(g, ab, {1, 0}), bc));
  CHECK(!ctx.transport(ab, b, cd));
  CHECK(ctx.transport(cd, element(g, cd, {3, 0}), bc) == element(g, bc, {0, 3}));
}

TEST_CASE("reduce: cancelling letters") {
  const GraphOfGroups g = bs_encoding(3, 2);
  const BrittonContext ctx = context(g);
  const std::size_t t = edge_of(g, "t");
  CHECK(ctx.reduce({LetterSyllable{t, 1}, LetterSyllable{t, -1}}).empty());
}

TEST_CASE("reduce: pinch in BS(2,3)") {
  // alpha: c -> a^2, omega: c -> a^3, so t a^3 t^-1 = a^2.
  const GraphOfGroups g = bs_encoding(3, 2);
  REQUIRE(g.alpha[edge_of(g, "t")].images() == IntegerMatrix{{2}});
  const BrittonContext ctx = context(g);
  const std::size_t t = edge_of(g, "t");
  const Word w{LetterSyllable{t, -1}, VertexSyllable{0, element(g, 0, {2})}, LetterSyllable{t, 1}};
  CHECK(ctx.reduce(w) == Word{VertexSyllable{0, element(g, 0, {3})}});
  const Word v{LetterSyllable{t, 1}, VertexSyllable{0, element(g, 0, {3})}, LetterSyllable{t, -1}};
  CHECK(ctx.reduce(v) == Word{VertexSyllable{0, element(g, 0, {2})}});
  const Word stuck{LetterSyllable{t, -1}, VertexSyllable{0, element(g, 0, {3})}, LetterSyllable{t, 1}};
  // No pinch applies; the normal form keeps a coset representative of <a^2>
  // after t^-1 and moves the rest to the front.
  const Word nf{VertexSyllable{0, element(g, 0, {3})}, LetterSyllable{t, -1},
                VertexSyllable{0, element(g, 0, {1})}, LetterSyllable{t, 1}};
  CHECK(ctx.reduce(stuck) == nf);
  CHECK(ctx.is_trivial(concat(stuck, inverse(nf))));
}

TEST_CASE("reduce: trivial middle element") {
  const GraphOfGroups g = bs_encoding(3, 2);
  const BrittonContext ctx = context(g);
  const std::size_t t = edge_of(g, "t");
  const Word w{VertexSyllable{0, element(g, 0, {1})}, LetterSyllable{t, 1},
               VertexSyllable{0, element(g, 0, {0})}, LetterSyllable{t, -1},
               VertexSyllable{0, element(g, 0, {-1})}};
  CHECK(ctx.reduce(w).empty());
}

TEST_CASE("reduce: merge across a tree edge") {
  const GraphOfGroups g = load_graph("path3.json");
  const BrittonContext ctx = context(g);
  const std::size_t ab = vertex_of(g, "ab"), bc = vertex_of(g, "bc");
  // b at ab and b^-1 at bc are equal up to sign after transport.
  CHECK(ctx.reduce({VertexSyllable{ab, element(g, ab, {0, 1})}, VertexSyllable{bc, element(g, bc, {-1, 0})}})
            .empty());
  CHECK(ctx.reduce({VertexSyllable{ab, element(g, ab, {1, 0})}, VertexSyllable{bc, element(g, bc, {0, 1})}})
            .size() == 2);
}

TEST_CASE("reduce: the stored G_0 word") {
  const GraphOfGroups g = load_graph("gk0.json");
  const Json doc = load_json("gk0_word.json");
  const Word w = word_from_json(g, doc);
  const BrittonContext ctx = context(g);
  CHECK(ctx.reduce(w) == Word{VertexSyllable{0, element(g, 0, {2, 0})}});
}

TEST_CASE("is_trivial examples") {
  const GraphOfGroups g = load_graph("gk2.json");
  const BrittonContext ctx = context(g);
  CHECK(ctx.is_trivial({}));
  CHECK(!ctx.is_trivial({VertexSyllable{0, element(g, 0, {1, 0})}}));
  const Word x{VertexSyllable{0, element(g, 0, {1, 2})}};
  CHECK(ctx.is_trivial(concat(concat(x, x), inverse(concat(x, x)))));
  CHECK(ctx.is_trivial(concat(concat(x, x), concat(inverse(x), inverse(x)))));
}

TEST_CASE("cyclic reduction") {
  const GraphOfGroups g = bs_encoding(3, 2);
  const BrittonContext ctx = context(g);
  const std::size_t t = edge_of(g, "t");
  const Word a{VertexSyllable{0, element(g, 0, {1})}};
  const auto ra = ctx.cyclically_reduce(a);
  CHECK(ra.word == a);
  CHECK(ra.conjugator.empty());

  const Word ta{LetterSyllable{t, 1}, VertexSyllable{0, element(g, 0, {1})}};
  const auto rta = ctx.cyclically_reduce(ta);
  CHECK(rta.word.size() == 2);
  CHECK(rta.conjugator.empty());

  const Word w{LetterSyllable{t, 1}, VertexSyllable{0, element(g, 0, {1})}, LetterSyllable{t, -1}};
  const auto r = ctx.cyclically_reduce(w);
  CHECK(r.word == a);
  CHECK(r.conjugator == Word{LetterSyllable{t, 1}});
  CHECK(same_element(ctx, w, conj(r.conjugator, r.word)));
}

TEST_CASE("classify and word_order examples") {
  const GraphOfGroups g = gk_encoding(2);
  const BrittonContext ctx = context(g);
  const std::size_t s = edge_of(g, "s"), t = edge_of(g, "t");
  CHECK(std::holds_alternative<Elliptic>(ctx.classify({VertexSyllable{0, element(g, 0, {1, 1})}})));
  CHECK(std::holds_alternative<Hyperbolic>(ctx.classify({LetterSyllable{t, 1}})));
  CHECK(std::holds_alternative<Hyperbolic>(ctx.classify({LetterSyllable{s, 1}, LetterSyllable{t, 1}})));
  CHECK(ctx.word_order({LetterSyllable{t, 1}}).infinite);
  CHECK(ctx.word_order({}) == Order::finite(1));
  CHECK(ctx.word_order({VertexSyllable{0, element(g, 0, {1, 0})}}).infinite);

  const GraphOfGroups c4 = build_or_throw({{"v", FgAbGroup::cyclic(4)}}, {});
  const BrittonContext c4ctx = context(c4);
  CHECK(c4ctx.word_order({VertexSyllable{0, element(c4, 0, {1})}}) == Order::finite(4));
  CHECK(c4ctx.word_order({VertexSyllable{0, element(c4, 0, {2})}}) == Order::finite(2));
}

TEST_CASE("elliptic conjugates have the order of their representative") {
  const GraphOfGroups g = load_graph("torsion_tree.json");
  const BrittonContext ctx = context(g);
  std::mt19937 rng(41);
  for (int i = 0; i < 50; ++i) {
    const std::size_t v = i % g.graph.vertex_count();
    const AbElement x = random_element(rng, g.vertex_groups[v]);
    const Word w = conj(random_word(rng, ctx, 4), Word{VertexSyllable{v, x}});
    CHECK(ctx.word_order(w) == element_order(x));
  }
}

TEST_CASE("check rejects tree letters and foreign vertices") {
  const GraphOfGroups g = load_graph("ex9.json");
  const BrittonContext ctx = context(g);
  CHECK(ctx.check({LetterSyllable{edge_of(g, "e1"), 1}}));
  CHECK(!ctx.check({LetterSyllable{edge_of(g, "e2"), 1}}));
  CHECK(ctx.check({VertexSyllable{7, AbElement::zero(FgAbGroup::free(1))}}));
}

TEST_CASE("property: w · w^-1 is trivial") {
  std::mt19937 rng(42);
  for (const auto& f : kFixtures) {
    const GraphOfGroups g = load_graph(f);
    const BrittonContext ctx = context(g);
    for (int i = 0; i < 100; ++i) {
      const Word w = random_word(rng, ctx);
      CHECK(ctx.is_trivial(concat(w, inverse(w))));
    }
  }
}

// Both a^-1 s^-1 b and s^-1 satisfy every clause of the definition of a
// reduced expression when s a s^-1 = b, so the normal form is what makes the
// reduced length an invariant of the element.
TEST_CASE("property: reduction is idempotent and length-canonical") {
  std::mt19937 rng(43);
  for (const auto& f : kFixtures) {
    const GraphOfGroups g = load_graph(f);
    const BrittonContext ctx = context(g);
    for (int i = 0; i < 60; ++i) {
      const Word w = random_word(rng, ctx);
      const Word r = ctx.reduce(w);
      CHECK(ctx.reduce(r) == r);
      CHECK(same_element(ctx, w, r));
      const Word w2 = rewrite_word(rng, ctx, w);
      const Word r2 = ctx.reduce(w2);
      CHECK(r2.size() == r.size());
      CHECK(r2 == r);
      CHECK(same_element(ctx, w2, r));
    }
  }
}

TEST_CASE("reduce picks one form when a syllable slides through a letter") {
  const GraphOfGroups g = gk_encoding(2);
  const BrittonContext ctx = context(g);
  const std::size_t s = edge_of(g, "s");
  const Word longer{VertexSyllable{0, element(g, 0, {-1, 0})}, LetterSyllable{s, -1},
                    VertexSyllable{0, element(g, 0, {0, 1})}};
  const Word shorter{LetterSyllable{s, -1}};
  CHECK(same_element(ctx, longer, shorter));
  CHECK(ctx.reduce(longer) == shorter);
  CHECK(ctx.reduce(shorter) == shorter);
}

TEST_CASE("property: classification is conjugation-invariant") {
  std::mt19937 rng(44);
  for (const auto& f : kFixtures) {
    const GraphOfGroups g = load_graph(f);
    const BrittonContext ctx = context(g);
    for (int i = 0; i < 40; ++i) {
      const Word w = random_word(rng, ctx, 5);
      const Word u = random_word(rng, ctx, 4);
      const bool hyp = std::holds_alternative<Hyperbolic>(ctx.classify(w));
      CHECK(std::holds_alternative<Hyperbolic>(ctx.classify(conj(u, w))) == hyp);
      const auto cr = ctx.cyclically_reduce(w);
      CHECK(same_element(ctx, w, conj(cr.conjugator, cr.word)));
    }
  }
}
