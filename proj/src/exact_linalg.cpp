#include "vrc/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace vrc {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix::IntegerMatrix(
    std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::size_t rows,
                                          const std::vector<IntVector>& columns) {
  IntegerMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::size_t cols,
                                       const std::vector<IntVector>& rows) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& x) { return x == 0; });
}

IntVector IntegerMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

IntVector IntegerMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntegerMatrix::set_column(std::size_t j, const IntVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::column_range(std::size_t first,
                                          std::size_t count) const {
  IntegerMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                     const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                     const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntegerMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape");
  IntVector r(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum shape");
  IntegerMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference shape");
  IntegerMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack rows");
  IntegerMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack cols");
  IntegerMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

std::string to_string(const IntegerMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector negated(const IntVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

// ---------------------------------------------------------------- Smith form

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntegerMatrix D = a;
  IntegerMatrix U = IntegerMatrix::identity(m);
  IntegerMatrix V = IntegerMatrix::identity(n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    D.add_row_multiple(dst, src, f);
    U.add_row_multiple(dst, src, f);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    D.add_col_multiple(dst, src, f);
    V.add_col_multiple(dst, src, f);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          if (pi == m || abs(D(i, j)) < abs(D(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return {std::move(U), std::move(D), std::move(V)};

      D.swap_rows(t, pi);
      U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_op(i, t, -floor_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_op(j, t, -floor_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(t, bad, Integer(1));
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

// -------------------------------------------------------------- Hermite form

HermiteDecomposition row_hermite_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  HermiteDecomposition out{a, IntegerMatrix::identity(m), {}};
  IntegerMatrix& H = out.H;
  IntegerMatrix& U = out.U;

  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, j) != 0 && (p == m || abs(H(i, j)) < abs(H(p, j)))) p = i;
      if (p == m) break;
      H.swap_rows(r, p);
      U.swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, j) == 0) continue;
        Integer q = -floor_div(H(i, j), H(r, j));
        H.add_row_multiple(i, r, q);
        U.add_row_multiple(i, r, q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, j) == 0) continue;
    if (H(r, j) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = -floor_div(H(i, j), H(r, j));
      H.add_row_multiple(i, r, q);
      U.add_row_multiple(i, r, q);
    }
    out.pivot_columns.push_back(j);
    ++r;
  }
  return out;
}

// ------------------------------------------------------- rank / determinant

namespace {

// Fraction-free elimination; returns rank and, for square input, determinant.
std::pair<std::size_t, Integer> bareiss(IntegerMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      m.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  Integer det = 0;
  if (rows == cols && r == rows) det = sign * prev;
  return {r, det};
}

}  // namespace

std::size_t rank(const IntegerMatrix& a) { return bareiss(a).first; }

std::size_t rational_rank(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RationalVector> m = vectors;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Integer determinant(const IntegerMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  return bareiss(a).second;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const Integer det = determinant(a);
  if (det != 1 && det != -1) throw std::invalid_argument("matrix is not unimodular");
  // Row-reduce [a | I]; a unimodular matrix has a unimodular HNF, which is I.
  HermiteDecomposition h = row_hermite_form(a);
  return h.U;
}

std::optional<RationalVector> solve_rational(const IntegerMatrix& a,
                                             const RationalVector& b) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.size() != n) throw std::invalid_argument("solve_rational shape");
  std::vector<RationalVector> m(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

IntVector clear_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * Rational(l);
    out[i] = s.get_num();
  }
  return out;
}

// ------------------------------------------------------------------ lattices

Lattice::Lattice(std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {}

Lattice Lattice::from_generators(const IntegerMatrix& generators) {
  HermiteDecomposition h = row_hermite_form(generators.transpose());
  Lattice l(generators.rows());
  IntegerMatrix b(generators.rows(), h.rank());
  for (std::size_t k = 0; k < h.rank(); ++k)
    for (std::size_t i = 0; i < generators.rows(); ++i) b(i, k) = h.H(k, i);
  l.basis_ = std::move(b);
  return l;
}

Lattice Lattice::full(std::size_t ambient_dim) {
  return from_generators(IntegerMatrix::identity(ambient_dim));
}

Lattice kernel(const IntegerMatrix& a) {
  HermiteDecomposition h = row_hermite_form(a.transpose());
  const std::size_t n = a.cols();
  IntegerMatrix gens(n, n - h.rank());
  for (std::size_t k = h.rank(); k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) gens(i, k - h.rank()) = h.U(k, i);
  return Lattice::from_generators(gens);
}

static void reduce_mod_lattice(IntVector& x, const Lattice& l) {
  const IntegerMatrix& b = l.basis();
  for (std::size_t k = 0; k < b.cols(); ++k) {
    std::size_t p = 0;
    while (b(p, k) == 0) ++p;
    Integer q = floor_div(x[p], b(p, k));
    if (q == 0) continue;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= q * b(i, k);
  }
}

IntVector reduce_modulo(IntVector x, const Lattice& l) {
  if (x.size() != l.ambient_dim()) throw std::invalid_argument("reduce_modulo: dimension mismatch");
  reduce_mod_lattice(x, l);
  return x;
}

namespace {

std::optional<IntVector> smith_solve(const SmithDecomposition& s, std::size_t rank,
                                     const IntVector& b) {
  IntVector c = s.U * b;
  IntVector y(s.V.rows(), Integer(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

}  // namespace

LinearSolver::LinearSolver(IntegerMatrix a)
    : a_(std::move(a)), snf_(smith_normal_form(a_)), rank_(snf_.rank()),
      kernel_(kernel(a_)) {}

std::optional<IntVector> LinearSolver::solve(const IntVector& b) const {
  if (b.size() != a_.rows()) throw std::invalid_argument("solve: rhs length");
  auto x = smith_solve(snf_, rank_, b);
  if (x) reduce_mod_lattice(*x, kernel_);
  return x;
}

std::optional<IntVector> solve(const IntegerMatrix& a, const IntVector& b) {
  return LinearSolver(a).solve(b);
}

Lattice lattice_intersection(const Lattice& l1, const Lattice& l2) {
  if (l1.ambient_dim() != l2.ambient_dim())
    throw std::invalid_argument("lattice_intersection: ambient dimensions differ");
  const std::size_t k1 = l1.rank();
  IntegerMatrix neg(l2.basis().rows(), l2.basis().cols());
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -l2.basis()(i, j);
  Lattice k = kernel(hstack(l1.basis(), neg));
  IntegerMatrix coeffs(k1, k.rank());
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k.rank(); ++j) coeffs(i, j) = k.basis()(i, j);
  return Lattice::from_generators(l1.basis() * coeffs);
}

bool lattice_membership(const IntVector& v, const Lattice& l) {
  if (v.size() != l.ambient_dim())
    throw std::invalid_argument("lattice_membership: dimension mismatch");
  return solve(l.basis(), v).has_value();
}

Lattice saturation(const Lattice& l) {
  Lattice orth = kernel(l.basis().transpose());
  return kernel(orth.basis().transpose());
}

}  // namespace vrc
