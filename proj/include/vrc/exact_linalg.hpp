#pragma once

// Exact integer and rational linear algebra over GMP integers: Smith and
// Hermite normal forms, integer kernels, lattices and integer solving.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vrc {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_columns(std::size_t rows,
                                    const std::vector<IntVector>& columns);
  static IntegerMatrix from_rows(std::size_t cols,
                                 const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const Integer> entries() const { return data_; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  void set_column(std::size_t j, const IntVector& v);

  IntegerMatrix transpose() const;
  /// Columns [first, first+count).
  IntegerMatrix column_range(std::size_t first, std::size_t count) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntVector operator*(const IntegerMatrix& a, const IntVector& v);
IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);

std::string to_string(const IntegerMatrix& m);

bool is_zero(const IntVector& v);
IntVector negated(const IntVector& v);

/// U·A·V = D with U, V unimodular and D diagonal, d1 | d2 | ... (zeros last).
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

/// Pivot is the minimal nonzero entry in absolute value, scanned row-major.
SmithDecomposition smith_normal_form(const IntegerMatrix& a);

/// U·A = H, H in row Hermite normal form: pivot columns strictly increase,
/// pivots are positive and entries above each pivot lie in [0, pivot).
struct HermiteDecomposition {
  IntegerMatrix H;
  IntegerMatrix U;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

HermiteDecomposition row_hermite_form(const IntegerMatrix& a);

/// Rank over the rationals.
std::size_t rank(const IntegerMatrix& a);
std::size_t rational_rank(const std::vector<RationalVector>& vectors);

Integer determinant(const IntegerMatrix& a);
/// Inverse of a matrix with determinant ±1; throws std::invalid_argument otherwise.
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);

/// Solves A·x = b over the rationals for a square nonsingular A.
std::optional<RationalVector> solve_rational(const IntegerMatrix& a,
                                             const RationalVector& b);

/// l·v with l the lcm of the denominators of v.
IntVector clear_denominators(const RationalVector& v);

/// A sublattice of Z^n in canonical form: the basis columns are the column
/// Hermite normal form of any generating set.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient_dim);  // zero lattice
  static Lattice from_generators(const IntegerMatrix& generators);
  static Lattice full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  const IntegerMatrix& basis() const { return basis_; }

  friend bool operator==(const Lattice& a, const Lattice& b) = default;

 private:
  std::size_t ambient_dim_ = 0;
  IntegerMatrix basis_;
};

/// Saturated lattice {x : A·x = 0}.
Lattice kernel(const IntegerMatrix& a);

/// Some x with A·x = b, reduced into the fundamental domain of the kernel
/// lattice (entries at kernel pivot rows in [0, pivot)).
std::optional<IntVector> solve(const IntegerMatrix& a, const IntVector& b);

Lattice lattice_intersection(const Lattice& l1, const Lattice& l2);
bool lattice_membership(const IntVector& v, const Lattice& l);
Lattice saturation(const Lattice& l);

/// Canonical representative of x + l: the coordinate at each basis pivot of l
/// lies in [0, pivot).
IntVector reduce_modulo(IntVector x, const Lattice& l);

/// Precomputed Smith data for repeated integer solves against one matrix.
class LinearSolver {
 public:
  explicit LinearSolver(IntegerMatrix a);
  std::optional<IntVector> solve(const IntVector& b) const;
  const IntegerMatrix& matrix() const { return a_; }

 private:
  IntegerMatrix a_;
  SmithDecomposition snf_;
  std::size_t rank_ = 0;
  Lattice kernel_;
};

}  // namespace vrc
