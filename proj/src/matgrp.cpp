#include "vrc/matgrp.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace vrc {

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Smallest dimension carrying an element of order m.
std::size_t order_cost(std::size_t m) {
  if (m <= 2) return m == 2 ? 1 : 0;
  std::size_t cost = 0, rest = m;
  for (std::size_t p = 2; p <= rest; ++p) {
    if (rest % p) continue;
    std::size_t pa = 1;
    while (rest % p == 0) {
      rest /= p;
      pa *= p;
    }
    cost += pa / p * (p - 1);
  }
  if (m % 4 == 2) cost -= 1;
  return cost;
}

void check_dimension(std::size_t n) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (n > kMaxMatrixDimension)
    throw std::invalid_argument("dimension too large: " + std::to_string(n) + " > " +
                                std::to_string(kMaxMatrixDimension));
}

Integer trace(const IntegerMatrix& x) {
  Integer t = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) t += x(i, i);
  return t;
}

}  // namespace

Integer minkowski_bound(std::size_t n) {
  Integer m = 1;
  for (std::size_t p = 2; p <= n + 1; ++p) {
    if (!is_prime(p)) continue;
    std::size_t e = 0;
    for (std::size_t pk = 1; n / (pk * (p - 1)) > 0; pk *= p) e += n / (pk * (p - 1));
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    m *= pe;
  }
  return m;
}

std::size_t max_element_order(std::size_t n) {
  check_dimension(n);
  // cost(m) <= n forces m <= 2^(n+2), so the scan below is exhaustive.
  static const std::vector<std::size_t> table = [] {
    std::vector<std::size_t> t(kMaxMatrixDimension + 1, 1);
    for (std::size_t d = 1; d <= kMaxMatrixDimension; ++d)
      for (std::size_t m = 1; m <= (std::size_t{1} << (d + 2)); ++m)
        if (order_cost(m) <= d) t[d] = m;
    return t;
  }();
  return table[n];
}

Order matrix_order(const IntegerMatrix& x) {
  if (!x.is_square()) throw std::invalid_argument("matrix_order: matrix is not square");
  const std::size_t n = x.rows();
  check_dimension(n);
  const Integer det = determinant(x);
  if (det != 1 && det != -1) throw std::invalid_argument("matrix_order: determinant is not +-1");
  if (abs(trace(x)) > Integer(static_cast<long>(n))) return Order::infinity();
  const IntegerMatrix id = IntegerMatrix::identity(n);
  const std::size_t e = max_element_order(n);
  IntegerMatrix p = x;
  for (std::size_t k = 1; k <= e; ++k) {
    if (p == id) return Order::finite(Integer(static_cast<unsigned long>(k)));
    p = p * x;
  }
  return Order::infinity();
}

IntegerMatrix evaluate_word(const MatGroupGens& g, const std::vector<std::size_t>& word) {
  IntegerMatrix p = IntegerMatrix::identity(g.n);
  for (std::size_t i : word) p = p * g.generators.at(i);
  return p;
}

FinitenessResult is_finite(const MatGroupGens& g) {
  check_dimension(g.n);
  for (const auto& x : g.generators) {
    if (x.rows() != g.n || x.cols() != g.n)
      throw std::invalid_argument("generator has the wrong dimension");
    const Integer det = determinant(x);
    if (det != 1 && det != -1) throw std::invalid_argument("generator is not invertible over Z");
  }
  const Integer cap = minkowski_bound(g.n);
  FinitenessResult out;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> words;

  auto add = [&](IntegerMatrix m, std::vector<std::size_t> w) {
    index.emplace(to_string(m), out.elements.size());
    out.elements.push_back(std::move(m));
    words.push_back(std::move(w));
  };
  add(IntegerMatrix::identity(g.n), {});

  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (std::size_t j = 0; j < g.generators.size(); ++j) {
      IntegerMatrix next = out.elements[head] * g.generators[j];
      if (index.count(to_string(next))) continue;
      std::vector<std::size_t> w = words[head];
      w.push_back(j);
      if (matrix_order(next).infinite) {
        out.witness = std::move(w);
        out.reason = "element of infinite order";
        out.elements.clear();
        return out;
      }
      add(std::move(next), std::move(w));
      if (Integer(static_cast<unsigned long>(out.elements.size())) > cap) {
        out.witness = words.back();
        out.reason = "closure exceeds the Minkowski bound " + cap.get_str();
        out.elements.clear();
        return out;
      }
    }
  }
  out.finite = true;
  return out;
}

}  // namespace vrc
