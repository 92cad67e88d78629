#include "rzero/lattice.hpp"

#include <stdexcept>

#include "rzero/errors.hpp"

namespace rzero {

Lattice Lattice::kernel(const IntMatrix& m) {
  bool zero = true;
  for (std::size_t i = 0; i < m.rows() && zero; ++i)
    for (std::size_t j = 0; j < m.cols() && zero; ++j) zero = m(i, j) == 0;
  if (zero) return whole(m.cols());
  SmithForm s = smith_normal_form(m, SmithParts::Cols);
  std::size_t n = m.cols(), r = s.rank;
  Lattice l;
  l.basis_ = IntMatrix(n, n - r);
  l.project_ = IntMatrix(n - r, n);
  l.check_ = IntMatrix(r, n);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      l.basis_(i, j - r) = s.V(i, j);
      l.project_(j - r, i) = s.V_inv(j, i);
    }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) l.check_(j, i) = s.V_inv(j, i);
  l.scale_.assign(n - r, Integer(1));
  return l;
}

Lattice Lattice::whole(std::size_t n) {
  Lattice l;
  l.whole_ = true;
  l.basis_ = IntMatrix::identity(n);
  l.scale_.assign(n, Integer(1));
  return l;
}

Lattice Lattice::span(const IntMatrix& generators) {
  SmithForm s = smith_normal_form(generators, SmithParts::Rows);
  std::size_t n = generators.rows(), r = s.rank;
  Lattice l;
  l.basis_ = IntMatrix(n, r);
  l.project_ = IntMatrix(r, n);
  l.check_ = IntMatrix(n - r, n);
  l.scale_.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    l.scale_[j] = s.diagonal(j, j);
    for (std::size_t i = 0; i < n; ++i) {
      l.basis_(i, j) = s.U_inv(i, j) * l.scale_[j];
      l.project_(j, i) = s.U(j, i);
    }
  }
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) l.check_(j - r, i) = s.U(j, i);
  return l;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& x) const {
  if (x.size() != ambient_dim()) throw std::invalid_argument("lattice coordinates: dimension mismatch");
  if (whole_) return x;
  if (!is_zero(check_ * x)) return std::nullopt;
  IntVector c = project_ * x;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (scale_[i] == 1) continue;
    if (!mpz_divisible_p(c[i].get_mpz_t(), scale_[i].get_mpz_t())) return std::nullopt;
    mpz_divexact(c[i].get_mpz_t(), c[i].get_mpz_t(), scale_[i].get_mpz_t());
  }
  return c;
}

Quotient::Quotient(Lattice lattice, const IntMatrix& relations) : lattice_(std::move(lattice)) {
  std::size_t l = lattice_.rank();
  if (relations.rows() != lattice_.ambient_dim()) throw std::invalid_argument("quotient: dimension mismatch");
  IntMatrix w = lattice_.whole_ ? relations : IntMatrix(l, relations.cols());
  for (std::size_t j = 0; j < relations.cols() && !lattice_.whole_; ++j) {
    auto c = lattice_.coordinates(relations.column(j));
    if (!c) throw InvariantError("quotient: relation outside the lattice");
    for (std::size_t i = 0; i < l; ++i) w(i, j) = (*c)[i];
  }
  SmithForm s = smith_normal_form(w, SmithParts::Rows);
  change_ = std::move(s.U);
  change_inv_ = std::move(s.U_inv);
  for (std::size_t i = 0; i < l; ++i) {
    Integer d = i < s.rank ? s.diagonal(i, i) : Integer(0);
    if (d == 1) continue;
    kept_.push_back(i);
    orders_.push_back(d);
  }
}

std::size_t Quotient::free_rank() const {
  std::size_t r = 0;
  for (const auto& o : orders_)
    if (o == 0) ++r;
  return r;
}

std::vector<Integer> Quotient::torsion() const {
  std::vector<Integer> t;
  for (const auto& o : orders_)
    if (o != 0) t.push_back(o);
  return t;
}

IntVector Quotient::generator(std::size_t i) const {
  IntVector c(lattice_.rank());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = change_inv_(k, kept_.at(i));
  return lattice_.basis() * c;
}

IntVector Quotient::normalize(IntVector c) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (orders_[i] != 0) mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(), orders_[i].get_mpz_t());
  return c;
}

std::optional<IntVector> Quotient::coordinates(const IntVector& x) const {
  auto c = lattice_.coordinates(x);
  if (!c) return std::nullopt;
  IntVector full = change_ * *c;
  IntVector out(kept_.size());
  for (std::size_t i = 0; i < kept_.size(); ++i) out[i] = full[kept_[i]];
  return normalize(std::move(out));
}

}  // namespace rzero
