#pragma once

// Finiteness of subgroups of GL(n, Z) given by generators, and orders of
// single matrices.

#include <string>
#include <vector>

#include "vrc/exact_linalg.hpp"
#include "vrc/fgab.hpp"

namespace vrc {

/// Largest dimension accepted by is_finite and matrix_order.
inline constexpr std::size_t kMaxMatrixDimension = 8;

struct MatGroupGens {
  std::size_t n = 0;
  std::vector<IntegerMatrix> generators;
};

struct FinitenessResult {
  bool finite = false;
  std::vector<IntegerMatrix> elements;  // finite: the whole group, BFS order
  std::vector<std::size_t> witness;     // infinite: generator indices, left to right
  std::string reason;                   // infinite: why

  std::size_t order() const { return elements.size(); }
};

/// Minkowski's bound on the order of a finite subgroup of GL(n, Z).
Integer minkowski_bound(std::size_t n);
/// Largest order of a finite-order element of GL(n, Z).
std::size_t max_element_order(std::size_t n);

/// Throws std::invalid_argument for a non-invertible generator or n above
/// kMaxMatrixDimension ("dimension too large").
FinitenessResult is_finite(const MatGroupGens& g);
Order matrix_order(const IntegerMatrix& x);

IntegerMatrix evaluate_word(const MatGroupGens& g, const std::vector<std::size_t>& word);

}  // namespace vrc
