#include "rzero/cohomology.hpp"

#include "rzero/errors.hpp"

namespace rzero {

IntMatrix coboundary_matrix(const Complex& x, int q) {
  const auto& rows = x.simplices(q + 1);
  IntMatrix d(rows.size(), x.count(q));
  if (q < 0) return d;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      Simplex face = rows[r];
      face.erase(face.begin() + static_cast<long>(i));
      d(r, *x.index_of(face)) = (i % 2 == 0) ? 1 : -1;
    }
  return d;
}

CochainPair::CochainPair(Subcomplex support, Subcomplex sub) : support_(std::move(support)), sub_(std::move(sub)) {
  if (!sub_.is_subset_of(support_)) throw InputError("cochain pair: subcomplex not contained in the support");
  const Complex& x = *support_.parent();
  cells_.resize(static_cast<std::size_t>(x.dimension() + 1));
  for (int q = 0; q <= x.dimension(); ++q)
    for (std::size_t i = 0; i < x.count(q); ++i)
      if (support_.contains(q, i) && !sub_.contains(q, i)) cells_[static_cast<std::size_t>(q)].push_back(i);
  for (int q = -1; q <= x.dimension() + 1; ++q) {
    const auto& rows = cells(q + 1);
    const auto& cols = cells(q);
    IntMatrix d(rows.size(), cols.size());
    if (!rows.empty() && !cols.empty()) {
      IntMatrix full = coboundary_matrix(x, q);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) d(r, c) = full(rows[r], cols[c]);
    }
    d_.push_back(std::move(d));
  }
}

CochainPair CochainPair::absolute(Subcomplex k) {
  Subcomplex none = Subcomplex::empty(k.parent());
  return CochainPair(std::move(k), std::move(none));
}

const std::vector<std::size_t>& CochainPair::cells(int q) const {
  static const std::vector<std::size_t> none;
  if (q < 0 || static_cast<std::size_t>(q) >= cells_.size()) return none;
  return cells_[static_cast<std::size_t>(q)];
}

const IntMatrix& CochainPair::coboundary(int q) const {
  if (q < -1 || q + 1 >= static_cast<int>(d_.size())) throw InputError("coboundary degree out of range");
  return d_[static_cast<std::size_t>(q + 1)];
}

IntVector CochainPair::local(int q, const IntVector& global) const {
  const Complex& x = *complex();
  if (global.size() != x.count(q)) throw InputError("cochain has the wrong length for its degree");
  for (std::size_t i = 0; i < global.size(); ++i)
    if (sgn(global[i]) != 0 && sub_.contains(q, i))
      throw InputError("relative cochain is nonzero on the subcomplex");
  const auto& c = cells(q);
  IntVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = global[c[i]];
  return out;
}

IntVector CochainPair::global(int q, const IntVector& local) const {
  IntVector out(complex()->count(q), Integer(0));
  const auto& c = cells(q);
  for (std::size_t i = 0; i < c.size(); ++i) out[c[i]] = local[i];
  return out;
}

std::size_t ClassGroup::free_rank() const {
  std::size_t r = 0;
  for (const auto& o : orders())
    if (o == 0) ++r;
  return r;
}

std::vector<Integer> ClassGroup::torsion() const {
  std::vector<Integer> t;
  for (const auto& o : orders())
    if (o != 0) t.push_back(o);
  return t;
}

CohomologyGroup::CohomologyGroup(CochainPair pair, int q) : pair_(std::move(pair)), q_(q) {
  if (q < 0) throw InputError("cohomology degree must be non-negative");
  quotient_ = Quotient(Lattice::kernel(pair_.coboundary(q)), pair_.coboundary(q - 1));
}

IntVector CohomologyGroup::generator(std::size_t i) const { return pair_.global(q_, quotient_.generator(i)); }

bool CohomologyGroup::is_cocycle(const IntVector& global) const {
  return is_zero(pair_.coboundary(q_) * pair_.local(q_, global));
}

std::optional<IntVector> CohomologyGroup::coordinates(const IntVector& cocycle) const {
  auto c = quotient_.coordinates(pair_.local(q_, cocycle));
  if (!c) throw InputError("cochain is not a cocycle of degree " + std::to_string(q_));
  return c;
}

InducedMap induced_map(const ClassGroup& source, const ClassGroup& target) {
  const CochainPair& s = source.pair();
  const CochainPair& t = target.pair();
  if (source.degree() != target.degree() || s.complex() != t.complex() ||
      !t.support().is_subset_of(s.support()) || !t.sub().is_subset_of(s.sub()))
    throw InputError("induced map: pairs are not nested");
  InducedMap m{IntMatrix(target.size(), source.size())};
  for (std::size_t j = 0; j < source.size(); ++j) {
    auto c = target.coordinates(source.generator(j));
    if (!c) throw InvariantError("induced map: image class outside the target group");
    for (std::size_t i = 0; i < target.size(); ++i) m.matrix(i, j) = (*c)[i];
  }
  return m;
}

KernelSubgroup::KernelSubgroup(std::shared_ptr<const ClassGroup> ambient, const ClassGroup& target,
                               const InducedMap& map)
    : ambient_(std::move(ambient)) {
  std::size_t g = ambient_->size(), h = target.size();
  if (map.matrix.rows() != h || map.matrix.cols() != g) throw InputError("kernel: map shape mismatch");
  // c is in the kernel iff M c + diag(target orders) y = 0 for some integer y
  IntMatrix b(h, g + h);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < g; ++j) b(i, j) = map.matrix(i, j);
    b(i, g + i) = target.orders()[i];
  }
  Lattice solutions = Lattice::kernel(b);
  IntMatrix projected(g, solutions.rank());
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < solutions.rank(); ++j) projected(i, j) = solutions.basis()(i, j);
  std::vector<std::size_t> torsion;
  for (std::size_t i = 0; i < g; ++i)
    if (ambient_->orders()[i] != 0) torsion.push_back(i);
  IntMatrix relations(g, torsion.size());
  for (std::size_t j = 0; j < torsion.size(); ++j) relations(torsion[j], j) = ambient_->orders()[torsion[j]];
  quotient_ = Quotient(Lattice::span(projected), relations);
}

IntVector KernelSubgroup::generator(std::size_t i) const {
  IntVector c = ambient_generator(i);
  IntVector z;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    IntVector gk = ambient_->generator(k);
    if (z.empty()) z.assign(gk.size(), Integer(0));
    for (std::size_t t = 0; t < gk.size(); ++t) z[t] += c[k] * gk[t];
  }
  if (z.empty()) z.assign(pair().complex()->count(degree()), Integer(0));
  return z;
}

std::optional<IntVector> KernelSubgroup::coordinates(const IntVector& cocycle) const {
  auto c = ambient_->coordinates(cocycle);
  if (!c) return std::nullopt;
  return quotient_.coordinates(*c);
}

IntVector connecting_delta(const CochainPair& a, int q, const IntVector& z) {
  IntVector local = a.local(q, z);
  if (!is_zero(a.coboundary(q) * local)) throw InputError("connecting_delta: cochain is not a cocycle");
  return coboundary_matrix(*a.complex(), q) * a.global(q, local);
}

std::size_t field_dimension(const CochainPair& pair, int q, const Field& k) {
  std::size_t cells = pair.cells(q).size();
  return cells - rank(k, reduce(k, pair.coboundary(q))) - rank(k, reduce(k, pair.coboundary(q - 1)));
}

std::size_t predicted_field_dimension(const ClassGroup& hq, const ClassGroup& hq1, const Field& k) {
  std::size_t d = hq.free_rank();
  if (k.is_rationals()) return d;
  Integer p(static_cast<unsigned long>(k.characteristic));
  for (const auto& t : hq.torsion())
    if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++d;
  for (const auto& t : hq1.torsion())
    if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++d;
  return d;
}

}  // namespace rzero
