#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace rzero {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "-p" or "p/q"; throws InputError otherwise. The result is canonical.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

}  // namespace rzero
