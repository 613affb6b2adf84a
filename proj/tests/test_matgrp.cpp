#include <doctest.h>

#include <algorithm>
#include <random>

#include "vrc/matgrp.hpp"

using namespace vrc;

namespace {

// Minkowski's bound straight from its product formula.
Integer oracle_minkowski(std::size_t n) {
  Integer m = 1;
  for (std::size_t p = 2; p <= n + 1; ++p) {
    bool prime = true;
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    std::size_t exponent = 0;
    for (std::size_t pk = 1; n / (pk * (p - 1)) > 0; pk *= p) exponent += n / (pk * (p - 1));
    for (std::size_t i = 0; i < exponent; ++i) m *= static_cast<unsigned long>(p);
  }
  return m;
}

// Order of a 2x2 integer matrix of determinant +-1 from its characteristic
// polynomial alone.
Order oracle_order_2x2(const IntegerMatrix& x) {
  const Integer tr = x(0, 0) + x(1, 1);
  const Integer det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  const IntegerMatrix id = IntegerMatrix::identity(2);
  if (det == -1) return tr == 0 ? Order::finite(2) : Order::infinity();
  if (tr == 0) return Order::finite(4);
  if (tr == 1) return Order::finite(6);
  if (tr == -1) return Order::finite(3);
  if (tr == 2) return x == id ? Order::finite(1) : Order::infinity();
  if (tr == -2) {
    IntegerMatrix minus(2, 2);
    minus(0, 0) = -1;
    minus(1, 1) = -1;
    return x == minus ? Order::finite(2) : Order::infinity();
  }
  return Order::infinity();
}

bool contains(const std::vector<IntegerMatrix>& xs, const IntegerMatrix& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

void check_closure(const MatGroupGens& g, const FinitenessResult& r) {
  REQUIRE(r.finite);
  CHECK(contains(r.elements, IntegerMatrix::identity(g.n)));
  for (const auto& x : r.elements)
    for (const auto& s : g.generators) CHECK(contains(r.elements, x * s));
  CHECK(Integer(static_cast<unsigned long>(r.order())) <= minkowski_bound(g.n));
}

const IntegerMatrix kSwap{{0, 1}, {1, 0}};
const IntegerMatrix kHex{{0, -1}, {1, 1}};

}  // namespace

TEST_CASE("minkowski bound") {
  CHECK(minkowski_bound(1) == 2);
  CHECK(minkowski_bound(2) == 24);
  CHECK(minkowski_bound(3) == 48);
  for (std::size_t n = 1; n <= kMaxMatrixDimension; ++n) CHECK(minkowski_bound(n) == oracle_minkowski(n));
}

TEST_CASE("max element order") {
  CHECK(max_element_order(1) == 2);
  CHECK(max_element_order(2) == 6);
  CHECK(max_element_order(3) == 6);
  CHECK(max_element_order(4) == 12);
}

TEST_CASE("is_finite examples") {
  const auto swap = is_finite({2, {kSwap}});
  CHECK(swap.finite);
  CHECK(swap.order() == 2);
  const auto unip = is_finite({2, {IntegerMatrix{{1, 1}, {0, 1}}}});
  CHECK(!unip.finite);
  CHECK(!unip.reason.empty());
  const MatGroupGens g{2, {kSwap, IntegerMatrix{{-1, 0}, {2, 1}}}};
  const auto inf = is_finite(g);
  CHECK(!inf.finite);
  REQUIRE(!inf.witness.empty());
  CHECK(matrix_order(evaluate_word(g, inf.witness)).infinite);
}

TEST_CASE("is_finite rejects bad input") {
  CHECK_THROWS_AS(is_finite({2, {IntegerMatrix{{2, 0}, {0, 1}}}}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(is_finite({9, {IntegerMatrix::identity(9)}}), doctest::Contains("dimension too large"),
                       std::invalid_argument);
}

TEST_CASE("matrix_order examples") {
  CHECK(matrix_order(IntegerMatrix::identity(3)) == Order::finite(1));
  CHECK(matrix_order(kHex) == Order::finite(6));
  CHECK(matrix_order(IntegerMatrix{{1, 1}, {0, 1}}).infinite);
  CHECK(matrix_order(IntegerMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}) == Order::finite(3));
}

TEST_CASE("matrix_order agrees with the characteristic polynomial in dimension 2") {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> d(-3, 3);
  int tested = 0;
  while (tested < 300) {
    IntegerMatrix x{{d(rng), d(rng)}, {d(rng), d(rng)}};
    const Integer det = determinant(x);
    if (det != 1 && det != -1) continue;
    ++tested;
    CHECK(matrix_order(x) == oracle_order_2x2(x));
  }
}

TEST_CASE("finite closures are closed and match single-generator orders") {
  std::mt19937 rng(52);
  std::uniform_int_distribution<int> d(-2, 2);
  int tested = 0;
  while (tested < 200) {
    const std::size_t n = 2 + tested % 2;
    IntegerMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = d(rng);
    const Integer det = determinant(x);
    if (det != 1 && det != -1) continue;
    ++tested;
    const MatGroupGens g{n, {x}};
    const auto r = is_finite(g);
    const Order o = matrix_order(x);
    CHECK(r.finite == !o.infinite);
    if (r.finite) {
      check_closure(g, r);
      CHECK(Integer(static_cast<unsigned long>(r.order())) == o.value);
    }
  }
}

TEST_CASE("signed permutations of rank 3 form a group of order 48") {
  const IntegerMatrix cyc{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const IntegerMatrix tr{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  const IntegerMatrix neg{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const MatGroupGens g{3, {cyc, tr, neg}};
  const auto r = is_finite(g);
  check_closure(g, r);
  CHECK(r.order() == 48);
}
