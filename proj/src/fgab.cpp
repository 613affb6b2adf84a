#include "vrc/fgab.hpp"

#include <sstream>
#include <stdexcept>

namespace vrc {

namespace {

IntVector reduce_coords(const FgAbGroup& g, IntVector c) {
  if (c.size() != g.dim()) throw std::invalid_argument("element has wrong number of coordinates");
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    Integer& x = c[g.free_rank + i];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), g.torsion[i].get_mpz_t());
  }
  return c;
}

}  // namespace

IntegerMatrix FgAbGroup::relation_matrix() const {
  IntegerMatrix r(dim(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) r(free_rank + i, i) = torsion[i];
  return r;
}

std::optional<std::string> FgAbGroup::check() const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) return "torsion factor " + torsion[i].get_str() + " is below 2";
    if (i > 0 && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t()))
      return "torsion factors " + torsion[i - 1].get_str() + ", " + torsion[i].get_str() +
             " break the divisibility chain";
  }
  return std::nullopt;
}

std::string FgAbGroup::to_string() const {
  std::ostringstream os;
  if (is_trivial()) return "0";
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

AbElement::AbElement(FgAbGroup group, IntVector coords)
    : group_(std::move(group)), coords_(reduce_coords(group_, std::move(coords))) {}

AbElement AbElement::zero(const FgAbGroup& g) {
  return AbElement(g, IntVector(g.dim(), Integer(0)));
}

AbElement AbElement::generator(const FgAbGroup& g, std::size_t i) {
  IntVector c(g.dim(), Integer(0));
  c.at(i) = 1;
  return AbElement(g, std::move(c));
}

AbElement AbElement::operator+(const AbElement& o) const {
  if (!(group_ == o.group_)) throw std::invalid_argument("adding elements of different groups");
  IntVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return AbElement(group_, std::move(c));
}

AbElement AbElement::operator-(const AbElement& o) const { return *this + (-o); }

AbElement AbElement::operator-() const { return AbElement(group_, negated(coords_)); }

AbElement AbElement::operator*(const Integer& n) const {
  IntVector c = coords_;
  for (auto& x : c) x *= n;
  return AbElement(group_, std::move(c));
}

std::string AbElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntegerMatrix images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.rows() != target_.dim() || images_.cols() != source_.dim())
    throw std::invalid_argument("homomorphism matrix has wrong shape");
  for (std::size_t j = 0; j < images_.cols(); ++j)
    for (std::size_t i = 0; i < target_.torsion.size(); ++i) {
      Integer& x = images_(target_.free_rank + i, j);
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), target_.torsion[i].get_mpz_t());
    }
}

AbHom AbHom::identity(const FgAbGroup& g) {
  return AbHom(g, g, IntegerMatrix::identity(g.dim()));
}

AbElement AbHom::image_of_generator(std::size_t j) const {
  return AbElement(target_, images_.column(j));
}

AbElement AbHom::operator()(const AbElement& x) const {
  if (!(x.group() == source_)) throw std::invalid_argument("element outside homomorphism source");
  return AbElement(target_, images_ * x.coords());
}

AbHom AbHom::compose_after(const AbHom& inner) const {
  if (!(inner.target_ == source_)) throw std::invalid_argument("composition mismatch");
  return AbHom(inner.source_, target_, images_ * inner.images_);
}

bool AbHom::is_well_defined() const {
  for (std::size_t i = 0; i < source_.torsion.size(); ++i)
    if (!(image_of_generator(source_.free_rank + i) * source_.torsion[i]).is_zero()) return false;
  return true;
}

Cokernel from_relations(std::size_t ambient_rank, const IntegerMatrix& relations) {
  if (relations.rows() != ambient_rank)
    throw std::invalid_argument("relations must have ambient_rank rows");
  SmithDecomposition s = smith_normal_form(relations);
  const std::size_t r = s.rank();
  IntegerMatrix uinv = unimodular_inverse(s.U);

  FgAbGroup g;
  g.free_rank = ambient_rank - r;
  std::vector<std::size_t> order;  // rows of U, canonical generator order
  for (std::size_t i = r; i < ambient_rank; ++i) order.push_back(i);
  for (std::size_t i = 0; i < r; ++i)
    if (s.D(i, i) != 1) {
      g.torsion.push_back(s.D(i, i));
      order.push_back(i);
    }

  IntegerMatrix proj(order.size(), ambient_rank);
  IntegerMatrix section(ambient_rank, order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      proj(k, j) = s.U(order[k], j);
      section(j, k) = uinv(j, order[k]);
    }
  AbHom p(FgAbGroup::free(ambient_rank), g, std::move(proj));
  return {std::move(g), std::move(p), std::move(section)};
}

Order element_order(const AbElement& g) {
  const FgAbGroup& G = g.group();
  for (std::size_t i = 0; i < G.free_rank; ++i)
    if (g[i] != 0) return Order::infinity();
  Integer l = 1;
  for (std::size_t i = 0; i < G.torsion.size(); ++i) {
    Integer gcd, q;
    mpz_gcd(gcd.get_mpz_t(), G.torsion[i].get_mpz_t(), g[G.free_rank + i].get_mpz_t());
    q = G.torsion[i] / gcd;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_mpz_t());
  }
  return Order::finite(l);
}

namespace {

// Lattice of x in Z^source.dim() with f(x) = 0 in the target.
Lattice lifted_kernel(const AbHom& f) {
  const std::size_t s = f.source().dim();
  Lattice k = kernel(hstack(f.images(), f.target().relation_matrix()));
  IntegerMatrix head(s, k.rank());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < k.rank(); ++j) head(i, j) = k.basis()(i, j);
  return Lattice::from_generators(head);
}

}  // namespace

HomKernel hom_kernel(const AbHom& f) {
  Lattice k = lifted_kernel(f);
  const IntegerMatrix& B = k.basis();
  const FgAbGroup& src = f.source();
  IntegerMatrix rel = src.relation_matrix();
  IntegerMatrix coeffs(B.cols(), rel.cols());
  LinearSolver solver(B);
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto y = solver.solve(rel.column(j));
    if (!y) throw std::logic_error("hom_kernel: source relations outside the kernel lattice");
    coeffs.set_column(j, *y);
  }
  Cokernel c = from_relations(B.cols(), coeffs);
  AbHom emb(c.group, src, B * c.section);
  return {std::move(c.group), std::move(emb)};
}

bool is_injective(const AbHom& f) { return hom_kernel(f).group.is_trivial(); }

std::optional<AbElement> preimage(const AbHom& f, const AbElement& y) {
  if (!(y.group() == f.target())) throw std::invalid_argument("preimage: element outside target");
  auto x = solve(hstack(f.images(), f.target().relation_matrix()), y.coords());
  if (!x) return std::nullopt;
  x->resize(f.source().dim());
  return AbElement(f.source(), std::move(*x));
}

Lattice ratio_lattice(const AbElement& a, const AbElement& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("elements of different groups");
  const std::size_t n = a.group().dim();
  IntegerMatrix ab(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    ab(i, 0) = a[i];
    ab(i, 1) = -b[i];
  }
  Lattice k = kernel(hstack(ab, a.group().relation_matrix()));
  IntegerMatrix head(2, k.rank());
  for (std::size_t j = 0; j < k.rank(); ++j) {
    head(0, j) = k.basis()(0, j);
    head(1, j) = k.basis()(1, j);
  }
  return Lattice::from_generators(head);
}

bool cyclic_intersection_trivial(const AbElement& a, const AbElement& b) {
  Lattice k = ratio_lattice(a, b);
  for (std::size_t j = 0; j < k.rank(); ++j)
    if (!(a * k.basis()(0, j)).is_zero()) return false;
  return true;
}

std::optional<PowerConjugacy> power_conjugacy_diag(const AbElement& a,
                                                   const AbElement& b) {
  Lattice k = ratio_lattice(a, b);
  std::optional<PowerConjugacy> best;
  for (int eps : {1, -1}) {
    Lattice line = Lattice::from_generators(IntegerMatrix{{eps}, {1}});
    Lattice meet = lattice_intersection(k, line);
    if (meet.is_zero()) continue;
    Integer m = abs(meet.basis()(1, 0));
    if (!best || m < best->m) best = PowerConjugacy{m, eps};
  }
  return best;
}

}  // namespace vrc
