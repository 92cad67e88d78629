#pragma once

#include <compare>
#include <optional>
#include <string>

#include "rzero/rational.hpp"

namespace rzero {

// An exact non-negative scalar: either a rational a, or sqrt(q) for a rational q >= 0.
// l2 minima are irrational in general but their squares are not, so they live as SqrtRat.
class ExactRadius {
 public:
  enum class Kind { Rat, SqrtRat };

  ExactRadius() = default;

  static ExactRadius rat(Rational value);
  static ExactRadius sqrt_of(Rational square);
  static ExactRadius zero() { return {}; }

  Kind kind() const { return kind_; }
  // The value for Rat, the square for SqrtRat.
  const Rational& payload() const { return payload_; }

  // value * |value| (the signed square); equals payload for SqrtRat.
  Rational signed_square() const;
  int sign() const;
  bool is_zero() const { return sgn(payload_) == 0; }

  // c * value for rational c >= 0, keeping the kind.
  ExactRadius scaled(const Rational& c) const;

  // Rational bounds with lower <= value <= upper; exact when the value is rational.
  Rational lower_bound() const;
  Rational upper_bound() const;
  // The value as a rational, if it is one (Rat, or SqrtRat of a rational square).
  std::optional<Rational> as_rational() const;

  std::string to_string() const;
  double approx() const;

 private:
  Kind kind_ = Kind::Rat;
  Rational payload_ = 0;
};

// Exact total order on real values; Rat(a) == SqrtRat(a^2).
std::strong_ordering cmp_radius(const ExactRadius& a, const ExactRadius& b);

inline std::strong_ordering operator<=>(const ExactRadius& a, const ExactRadius& b) {
  return cmp_radius(a, b);
}
inline bool operator==(const ExactRadius& a, const ExactRadius& b) {
  return cmp_radius(a, b) == std::strong_ordering::equal;
}

// Ordering of |a - b| against |c - d|.
std::strong_ordering cmp_radius_diff(const ExactRadius& a, const ExactRadius& b,
                                     const ExactRadius& c, const ExactRadius& d);

// Sign of alpha + beta*sqrt(x) + gamma*sqrt(y), x, y >= 0.
int sign_of_sqrt_sum(const Rational& alpha, const Rational& beta, const Rational& x,
                     const Rational& gamma, const Rational& y);

// The non-negative real |hi - lo|. Differences of square roots are not square roots
// themselves, so distances between l2-derived endpoints are kept in this form.
struct RadiusGap {
  ExactRadius hi;
  ExactRadius lo;

  RadiusGap() = default;
  RadiusGap(ExactRadius a, ExactRadius b = ExactRadius::zero()) : hi(std::move(a)), lo(std::move(b)) {}

  // The gap as a single ExactRadius when that is possible.
  std::optional<ExactRadius> to_radius() const;
  RadiusGap halved() const;
  std::string to_string() const;
};

std::strong_ordering cmp_gap(const RadiusGap& a, const RadiusGap& b);
inline std::strong_ordering operator<=>(const RadiusGap& a, const RadiusGap& b) { return cmp_gap(a, b); }
inline bool operator==(const RadiusGap& a, const RadiusGap& b) {
  return cmp_gap(a, b) == std::strong_ordering::equal;
}

}  // namespace rzero
