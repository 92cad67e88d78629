#pragma once

#include <optional>
#include <vector>

#include "rzero/matrix.hpp"

namespace rzero {

// A sublattice L of Z^N with an explicit basis and an exact coordinate map.
class Lattice {
 public:
  // ker M for an integer matrix M with N columns.
  static Lattice kernel(const IntMatrix& m);
  // The span of the columns of G (N rows).
  static Lattice span(const IntMatrix& generators);
  // All of Z^n with the standard basis.
  static Lattice whole(std::size_t n);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  // c with basis * c == x, or nullopt when x is not in L.
  std::optional<IntVector> coordinates(const IntVector& x) const;

 private:
  IntMatrix basis_;    // N x l
  IntMatrix project_;  // l x N
  IntMatrix check_;    // rows that must annihilate members
  std::vector<Integer> scale_;
  bool whole_ = false;

  friend class Quotient;
};

// The finitely generated abelian group L / R for lattices R <= L <= Z^N, presented as
// Z/orders[0] + Z/orders[1] + ... with orders[i] == 0 for free summands.
class Quotient {
 public:
  Quotient() = default;
  // relations: columns spanning R; every column must lie in L.
  Quotient(Lattice lattice, const IntMatrix& relations);

  std::size_t size() const { return orders_.size(); }
  const std::vector<Integer>& orders() const { return orders_; }
  std::size_t free_rank() const;
  std::vector<Integer> torsion() const;
  bool trivial() const { return orders_.empty(); }

  // Ambient vector representing generator i.
  IntVector generator(std::size_t i) const;
  // Coordinates of the class of x (torsion entries reduced into [0, order)), or
  // nullopt when x is not in L.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  // Reduce a coordinate vector modulo the orders.
  IntVector normalize(IntVector c) const;
  const Lattice& lattice() const { return lattice_; }

 private:
  Lattice lattice_;
  IntMatrix change_;      // U_W: lattice coordinates -> presentation coordinates
  IntMatrix change_inv_;  // U_W^{-1}
  std::vector<std::size_t> kept_;
  std::vector<Integer> orders_;
};

}  // namespace rzero
