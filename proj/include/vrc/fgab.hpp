#pragma once

// Finitely generated abelian groups Z^r + Z/d1 + ... + Z/dk, elements and
// homomorphisms. Subgroup questions are answered on the lifted presentation
// Z^(r+k) modulo the columns d_i e_(r+i).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vrc/exact_linalg.hpp"

namespace vrc {

/// Order of an element or group: finite value, or infinite.
struct Order {
  bool infinite = false;
  Integer value = 1;

  static Order infinity() { return {true, 0}; }
  static Order finite(Integer n) { return {false, std::move(n)}; }
  std::string to_string() const { return infinite ? "infinity" : value.get_str(); }
  friend bool operator==(const Order&, const Order&) = default;
};

struct FgAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors, each >= 2, d_i | d_(i+1)

  static FgAbGroup free(std::size_t r) { return {r, {}}; }
  static FgAbGroup cyclic(const Integer& d) { return {0, {d}}; }

  /// Number of canonical generators, r + k.
  std::size_t dim() const { return free_rank + torsion.size(); }
  bool is_trivial() const { return dim() == 0; }
  bool is_finite() const { return free_rank == 0; }
  /// Cyclic: Z, Z/d or trivial.
  bool is_cyclic() const { return dim() <= 1; }

  /// Columns d_i e_(r+i): the relation lattice of the lifted presentation.
  IntegerMatrix relation_matrix() const;
  /// Empty when canonical, else a description of the violation.
  std::optional<std::string> check() const;
  std::string to_string() const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
};

class AbElement {
 public:
  AbElement() = default;
  /// Coordinates are free parts then torsion residues; residues are reduced.
  AbElement(FgAbGroup group, IntVector coords);
  static AbElement zero(const FgAbGroup& g);
  static AbElement generator(const FgAbGroup& g, std::size_t i);

  const FgAbGroup& group() const { return group_; }
  const IntVector& coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const { return vrc::is_zero(coords_); }

  AbElement operator+(const AbElement& o) const;
  AbElement operator-(const AbElement& o) const;
  AbElement operator-() const;
  AbElement operator*(const Integer& n) const;

  std::string to_string() const;
  friend bool operator==(const AbElement&, const AbElement&) = default;

 private:
  FgAbGroup group_;
  IntVector coords_;
};

/// images is target.dim() x source.dim(); column j is the image of generator j.
class AbHom {
 public:
  AbHom() = default;
  AbHom(FgAbGroup source, FgAbGroup target, IntegerMatrix images);
  static AbHom identity(const FgAbGroup& g);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntegerMatrix& images() const { return images_; }
  AbElement image_of_generator(std::size_t j) const;

  AbElement operator()(const AbElement& x) const;
  AbHom compose_after(const AbHom& inner) const;  // this ∘ inner

  /// d_i · image(g_i) = 0 for every torsion generator.
  bool is_well_defined() const;

  friend bool operator==(const AbHom&, const AbHom&) = default;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntegerMatrix images_;
};

/// Z^n / span(relations) in canonical form.
struct Cokernel {
  FgAbGroup group;
  AbHom projection;      // Z^n -> group
  IntegerMatrix section; // n x group.dim(): a lift of each canonical generator
};

Cokernel from_relations(std::size_t ambient_rank, const IntegerMatrix& relations);

Order element_order(const AbElement& g);

struct HomKernel {
  FgAbGroup group;
  AbHom embedding;  // group -> f.source()
};

HomKernel hom_kernel(const AbHom& f);
bool is_injective(const AbHom& f);

/// Some x with f(x) = y, or absent when y is outside the image.
std::optional<AbElement> preimage(const AbHom& f, const AbElement& y);

/// Lattice {(s,t) : s·a = t·b} in Z^2.
Lattice ratio_lattice(const AbElement& a, const AbElement& b);

bool cyclic_intersection_trivial(const AbElement& a, const AbElement& b);

struct PowerConjugacy {
  Integer m;
  int epsilon = 1;
  friend bool operator==(const PowerConjugacy&, const PowerConjugacy&) = default;
};

/// Least m >= 1 with m·b = ε·m·a, ε = +1 preferred at equal m.
std::optional<PowerConjugacy> power_conjugacy_diag(const AbElement& a,
                                                   const AbElement& b);

}  // namespace vrc
