#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rzero/rational.hpp"

namespace rzero {

// Dense row-major matrix. Dimensions are always explicit, including 0 x k and k x 0.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (x[k] != 0) y[i] += a(i, k) * x[k];
  return y;
}

using IntMatrix = Matrix<Integer>;
using IntVector = std::vector<Integer>;

IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);
bool is_zero(const IntVector& v);
Integer determinant(const IntMatrix& m);  // Bareiss; square matrices only

struct SmithForm {
  IntMatrix diagonal;  // S, same shape as the input
  IntMatrix U, U_inv;  // rows x rows, unimodular
  IntMatrix V, V_inv;  // cols x cols, unimodular
  std::size_t rank = 0;
  // d_1 | d_2 | ... | d_rank, all positive
  std::vector<Integer> divisors() const;
};

// U * M * V == S with S diagonal and d_1 | d_2 | ... . Pivots are chosen by minimal
// absolute value, ties broken by row-major position, so the result is deterministic.
enum class SmithParts { All, Rows, Cols };  // Rows: U and U_inv only; Cols: V and V_inv only
SmithForm smith_normal_form(const IntMatrix& m, SmithParts parts = SmithParts::All);

// Some integer x with M x == b, or nullopt if none exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

// Q (characteristic 0) or F_p.
struct Field {
  std::uint64_t characteristic = 0;

  static Field rationals() { return {0}; }
  static Field prime(std::uint64_t p);

  bool is_rationals() const { return characteristic == 0; }
  Rational reduce(const Rational& q) const;  // canonical representative
  Rational reduce(const Integer& z) const { return reduce(Rational(z)); }
  Rational inverse(const Rational& q) const;
  std::string name() const;  // "q", "f2", "f3", ...
  static Field parse(const std::string& name);

  bool operator==(const Field&) const = default;
};

using FieldMatrix = Matrix<Rational>;
using FieldVector = std::vector<Rational>;

// Matrix product with entries reduced into the field.
FieldMatrix multiply(const Field& k, const FieldMatrix& a, const FieldMatrix& b);
FieldVector apply(const Field& k, const FieldMatrix& a, const FieldVector& x);
FieldMatrix reduce(const Field& k, const IntMatrix& m);

std::size_t rank(const Field& k, FieldMatrix m);
// Basis of the null space, as columns.
FieldMatrix null_space(const Field& k, const FieldMatrix& m);
// Some x with M x == b over the field, or nullopt.
std::optional<FieldVector> solve(const Field& k, const FieldMatrix& m, const FieldVector& b);

}  // namespace rzero
