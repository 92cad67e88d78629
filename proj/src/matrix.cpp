#include "rzero/matrix.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "rzero/errors.hpp"

namespace rzero {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

struct Overflow {};

// int64 with overflow detection; the Smith form runs on this first and falls back to
// GMP integers when an intermediate value leaves the 64-bit range.
struct Small {
  std::int64_t v = 0;
  Small() = default;
  Small(std::int64_t x) : v(x) {}
  friend Small operator+(Small a, Small b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Small operator-(Small a, Small b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Small operator*(Small a, Small b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Small operator/(Small a, Small b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  friend Small operator%(Small a, Small b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Small operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  Small& operator+=(Small b) { return *this = *this + b; }
  friend bool operator==(Small a, Small b) { return a.v == b.v; }
  friend bool operator!=(Small a, Small b) { return a.v != b.v; }
  friend bool operator<(Small a, Small b) { return a.v < b.v; }
};

Small magnitude(Small a) { return a.v < 0 ? -a : a; }
Integer magnitude(const Integer& a) { return abs(a); }
bool negative(Small a) { return a.v < 0; }
bool negative(const Integer& a) { return sgn(a) < 0; }
Integer truncated_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Small truncated_quotient(Small a, Small b) { return a / b; }
bool divides(const Integer& d, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }
bool divides(Small d, Small a) { return a % d == 0; }

template <class T>
struct SmithWork {
  Matrix<T> a, u, ui, v, vi;
  bool rows_, cols_;
  std::size_t rank = 0;

  SmithWork(Matrix<T> m, SmithParts parts)
      : a(std::move(m)), rows_(parts != SmithParts::Cols), cols_(parts != SmithParts::Rows) {
    if (rows_) u = ui = Matrix<T>::identity(a.rows());
    if (cols_) v = vi = Matrix<T>::identity(a.cols());
  }

  std::size_t R() const { return a.rows(); }
  std::size_t C() const { return a.cols(); }

  // row_i += c * row_k
  void row_addmul(std::size_t i, std::size_t k, const T& c, std::size_t from) {
    for (std::size_t j = from; j < C(); ++j)
      if (a(k, j) != 0) a(i, j) = a(i, j) + c * a(k, j);
    if (!rows_) return;
    for (std::size_t j = 0; j < R(); ++j)
      if (u(k, j) != 0) u(i, j) = u(i, j) + c * u(k, j);
    for (std::size_t r = 0; r < R(); ++r)
      if (ui(r, i) != 0) ui(r, k) = ui(r, k) - c * ui(r, i);
  }
  // col_j += c * col_k
  void col_addmul(std::size_t j, std::size_t k, const T& c, std::size_t from) {
    for (std::size_t i = from; i < R(); ++i)
      if (a(i, k) != 0) a(i, j) = a(i, j) + c * a(i, k);
    if (!cols_) return;
    for (std::size_t i = 0; i < C(); ++i)
      if (v(i, k) != 0) v(i, j) = v(i, j) + c * v(i, k);
    for (std::size_t r = 0; r < C(); ++r)
      if (vi(j, r) != 0) vi(k, r) = vi(k, r) - c * vi(j, r);
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < C(); ++j) std::swap(a(i, j), a(k, j));
    if (!rows_) return;
    for (std::size_t j = 0; j < R(); ++j) std::swap(u(i, j), u(k, j));
    for (std::size_t r = 0; r < R(); ++r) std::swap(ui(r, i), ui(r, k));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < R(); ++i) std::swap(a(i, j), a(i, k));
    if (!cols_) return;
    for (std::size_t i = 0; i < C(); ++i) std::swap(v(i, j), v(i, k));
    for (std::size_t r = 0; r < C(); ++r) std::swap(vi(j, r), vi(k, r));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < C(); ++j) a(i, j) = -a(i, j);
    if (!rows_) return;
    for (std::size_t j = 0; j < R(); ++j) u(i, j) = -u(i, j);
    for (std::size_t r = 0; r < R(); ++r) ui(r, i) = -ui(r, i);
  }

  void run() {
    std::size_t t = 0;
    std::size_t limit = std::min(R(), C());
    while (t < limit) {
      // minimal |entry| in the trailing block
      bool found = false;
      std::size_t bi = 0, bj = 0;
      T best;
      for (std::size_t i = t; i < R(); ++i)
        for (std::size_t j = t; j < C(); ++j) {
          if (a(i, j) == 0) continue;
          T m = magnitude(a(i, j));
          if (!found || m < best) {
            found = true;
            best = m;
            bi = i;
            bj = j;
          }
        }
      if (!found) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < R(); ++i) {
          if (a(i, t) == 0) continue;
          T q = truncated_quotient(a(i, t), a(t, t));
          row_addmul(i, t, -q, t);
          if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < C(); ++j) {
          if (a(t, j) == 0) continue;
          T q = truncated_quotient(a(t, j), a(t, t));
          col_addmul(j, t, -q, t);
          if (a(t, j) != 0) clean = false;
        }
        if (!clean) {
          // move the smallest remainder of row/column t into the pivot
          bool in_row = false;
          std::size_t idx = 0;
          T m = magnitude(a(t, t));
          for (std::size_t i = t + 1; i < R(); ++i)
            if (a(i, t) != 0 && magnitude(a(i, t)) < m) {
              m = magnitude(a(i, t));
              idx = i;
              in_row = false;
            }
          for (std::size_t j = t + 1; j < C(); ++j)
            if (a(t, j) != 0 && magnitude(a(t, j)) < m) {
              m = magnitude(a(t, j));
              idx = j;
              in_row = true;
            }
          if (in_row)
            swap_cols(t, idx);
          else
            swap_rows(t, idx);
          continue;
        }
        // divisibility of the trailing block by the pivot
        bool fixed = false;
        for (std::size_t i = t + 1; i < R() && !fixed; ++i)
          for (std::size_t j = t + 1; j < C(); ++j)
            if (a(i, j) != 0 && !divides(a(t, t), a(i, j))) {
              row_addmul(t, i, T(1), t);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (negative(a(t, t))) negate_row(t);
      ++t;
    }
    rank = t;
  }
};

template <class T>
Matrix<T> convert_to(const IntMatrix& m) {
  Matrix<T> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Small>) {
        if (!m(i, j).fits_slong_p()) throw Overflow{};
        r(i, j) = Small(m(i, j).get_si());
      } else {
        r(i, j) = m(i, j);
      }
    }
  return r;
}

IntMatrix back(const Matrix<Small>& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<long>(m(i, j).v);
  return r;
}

}  // namespace

std::vector<Integer> SmithForm::divisors() const {
  std::vector<Integer> d(rank);
  for (std::size_t i = 0; i < rank; ++i) d[i] = diagonal(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m, SmithParts parts) {
  SmithForm out;
  try {
    SmithWork<Small> w(convert_to<Small>(m), parts);
    w.run();
    out.diagonal = back(w.a);
    out.U = back(w.u);
    out.U_inv = back(w.ui);
    out.V = back(w.v);
    out.V_inv = back(w.vi);
    out.rank = w.rank;
    return out;
  } catch (const Overflow&) {
  }
  SmithWork<Integer> w(m, parts);
  w.run();
  out.diagonal = std::move(w.a);
  out.U = std::move(w.u);
  out.U_inv = std::move(w.ui);
  out.V = std::move(w.v);
  out.V_inv = std::move(w.vi);
  out.rank = w.rank;
  return out;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  SmithForm s = smith_normal_form(m);
  IntVector c = s.U * b;
  IntVector y(m.cols(), Integer(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      const Integer& d = s.diagonal(i, i);
      if (!divides(d, c[i])) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

Field Field::prime(std::uint64_t p) {
  Integer z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
    throw std::invalid_argument("field characteristic must be prime: " + std::to_string(p));
  return {p};
}

Rational Field::reduce(const Rational& q) const {
  if (characteristic == 0) return q;
  Integer p(static_cast<unsigned long>(characteristic));
  Integer num, den, inv;
  mpz_mod(num.get_mpz_t(), q.get_num().get_mpz_t(), p.get_mpz_t());
  mpz_mod(den.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t());
  if (den == 0) throw std::domain_error("denominator vanishes in " + name());
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  Integer r = num * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return Rational(r);
}

Rational Field::inverse(const Rational& q) const {
  if (sgn(q) == 0) throw std::domain_error("inverse of zero");
  if (characteristic == 0) return 1 / q;
  Integer p(static_cast<unsigned long>(characteristic));
  Integer a = reduce(q).get_num(), inv;
  mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return Rational(inv);
}

std::string Field::name() const {
  if (characteristic == 0) return "q";
  return "f" + std::to_string(characteristic);
}

Field Field::parse(const std::string& name) {
  if (name == "q") return rationals();
  if (name.size() >= 2 && name[0] == 'f') {
    try {
      return prime(std::stoull(name.substr(1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw InputError("unknown field \"" + name + "\" (expected q or f<prime>)");
}

FieldMatrix multiply(const Field& k, const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix c = a * b;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = k.reduce(c(i, j));
  return c;
}

FieldVector apply(const Field& k, const FieldMatrix& a, const FieldVector& x) {
  FieldVector y = a * x;
  for (auto& e : y) e = k.reduce(e);
  return y;
}

FieldMatrix reduce(const Field& k, const IntMatrix& m) {
  FieldMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = k.reduce(m(i, j));
  return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(const Field& k, FieldMatrix& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    Rational inv = k.inverse(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = k.reduce(m(r, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) = k.reduce(m(i, j) - f * m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Field& k, FieldMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = k.reduce(m(i, j));
  return rref(k, m, m.cols()).size();
}

FieldMatrix null_space(const Field& k, const FieldMatrix& m) {
  FieldMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = k.reduce(a(i, j));
  auto pivots = rref(k, a, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FieldMatrix basis(a.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], f) = k.reduce(-a(r, free_cols[f]));
  }
  return basis;
}

std::optional<FieldVector> solve(const Field& k, const FieldMatrix& m, const FieldVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  FieldMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = k.reduce(m(i, j));
    aug(i, m.cols()) = k.reduce(b[i]);
  }
  auto pivots = rref(k, aug, m.cols());
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (sgn(aug(i, m.cols())) != 0) return std::nullopt;
  FieldVector x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

}  // namespace rzero
