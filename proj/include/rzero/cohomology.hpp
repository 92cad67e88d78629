#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rzero/complex.hpp"
#include "rzero/lattice.hpp"
#include "rzero/matrix.hpp"

namespace rzero {

// Coboundary C^q(X) -> C^{q+1}(X) in the sorted-vertex convention: rows are
// (q+1)-simplices, columns q-simplices, entry (-1)^i for the face missing vertex i.
IntMatrix coboundary_matrix(const Complex& x, int q);

// Cochains of the pair (K, L), L <= K <= X: functions on the simplices of K not in L.
// Cochains are exchanged as global vectors indexed by all q-simplices of X.
class CochainPair {
 public:
  CochainPair(Subcomplex support, Subcomplex sub);
  static CochainPair absolute(Subcomplex k);
  static CochainPair relative(Subcomplex k, Subcomplex l) { return CochainPair(std::move(k), std::move(l)); }

  const ComplexPtr& complex() const { return support_.parent(); }
  const Subcomplex& support() const { return support_; }
  const Subcomplex& sub() const { return sub_; }
  bool is_relative() const { return !sub_.is_empty(); }

  // X-indices of the q-cells (simplices of K \ L).
  const std::vector<std::size_t>& cells(int q) const;
  // d_q restricted to cells: rows cells(q+1), columns cells(q); -1 <= q <= dim X + 1.
  const IntMatrix& coboundary(int q) const;

  // Values on cells(q); throws InputError if a relative cochain is nonzero on L.
  IntVector local(int q, const IntVector& global) const;
  IntVector global(int q, const IntVector& local) const;  // zero off the cells

 private:
  Subcomplex support_, sub_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<IntMatrix> d_;  // d_[q + 1]
};

// A group of cohomology classes represented by global cochains: either a full
// cohomology group or a subgroup of one.
class ClassGroup {
 public:
  virtual ~ClassGroup() = default;
  virtual int degree() const = 0;
  virtual const CochainPair& pair() const = 0;
  // Z/orders[0] + Z/orders[1] + ..., 0 for free summands.
  virtual const std::vector<Integer>& orders() const = 0;
  // Global cocycle representing generator i.
  virtual IntVector generator(std::size_t i) const = 0;
  // Coordinates of the class of a global cocycle, or nullopt when the class is outside
  // the group. Throws InputError when the cochain is not a cocycle of the pair.
  virtual std::optional<IntVector> coordinates(const IntVector& cocycle) const = 0;

  std::size_t size() const { return orders().size(); }
  std::size_t free_rank() const;
  std::vector<Integer> torsion() const;
};

// H^q(K, L; Z), presented by the Smith form of ker d_q modulo im d_{q-1}.
class CohomologyGroup : public ClassGroup {
 public:
  CohomologyGroup(CochainPair pair, int q);

  int degree() const override { return q_; }
  const CochainPair& pair() const override { return pair_; }
  const std::vector<Integer>& orders() const override { return quotient_.orders(); }
  IntVector generator(std::size_t i) const override;
  std::optional<IntVector> coordinates(const IntVector& cocycle) const override;
  const Quotient& presentation() const { return quotient_; }
  bool is_cocycle(const IntVector& global) const;

 private:
  CochainPair pair_;
  int q_;
  Quotient quotient_;
};

struct InducedMap {
  IntMatrix matrix;  // column j: target coordinates of the image of source generator j
};

// The map induced by restricting cochains to the target pair. Requires the target
// support inside the source support and the target subcomplex inside the source one.
InducedMap induced_map(const ClassGroup& source, const ClassGroup& target);

// The subgroup ker(map) of an ambient group, where map: ambient -> target.
class KernelSubgroup : public ClassGroup {
 public:
  KernelSubgroup(std::shared_ptr<const ClassGroup> ambient, const ClassGroup& target, const InducedMap& map);

  int degree() const override { return ambient_->degree(); }
  const CochainPair& pair() const override { return ambient_->pair(); }
  const std::vector<Integer>& orders() const override { return quotient_.orders(); }
  IntVector generator(std::size_t i) const override;
  std::optional<IntVector> coordinates(const IntVector& cocycle) const override;
  // Generator i in ambient coordinates.
  IntVector ambient_generator(std::size_t i) const { return quotient_.generator(i); }
  const ClassGroup& ambient() const { return *ambient_; }

 private:
  std::shared_ptr<const ClassGroup> ambient_;
  Quotient quotient_;
};

// d of the zero extension of a cocycle z on A = pair.support(); the result is a global
// relative cocycle of (X, A). Throws InputError if z is not a cocycle on A.
IntVector connecting_delta(const CochainPair& a, int q, const IntVector& z);

// dim H^q(K, L; F) by ranks of the coboundaries over F.
std::size_t field_dimension(const CochainPair& pair, int q, const Field& k);

// dim H^q(K, L; F_p) predicted from H^q(K, L; Z) and H^{q+1}(K, L; Z).
std::size_t predicted_field_dimension(const ClassGroup& hq, const ClassGroup& hq1, const Field& k);

}  // namespace rzero
