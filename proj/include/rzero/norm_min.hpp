#pragma once

#include <string>
#include <vector>

#include "rzero/radius.hpp"

namespace rzero {

enum class Norm { L1, L2, Linf };

std::string to_string(Norm norm);
Norm parse_norm(const std::string& name);

// |v| exactly: Rat for l1 / linf, SqrtRat(sum of squares) for l2.
ExactRadius vector_norm(const RationalVector& v, Norm norm);

struct NormMin {
  ExactRadius min;
  RationalVector barycentric;  // one minimizer, one coordinate per simplex vertex
  bool at_vertex = false;      // some vertex of the simplex attains the minimum
};

// Minimum of |sum_i t_i values[i]| over the closed standard simplex. l1 and linf are
// solved as exact LPs by enumerating basic feasible points; l2 by solving the
// least-norm problem on the affine hull of every affinely independent face. Among
// equal minima the returned minimizer has the smallest support.
NormMin simplex_norm_min(const std::vector<RationalVector>& values, Norm norm);

}  // namespace rzero
