#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rzero/complex.hpp"

namespace rzero {

struct Subdivision {
  PLMap map;
  // Per vertex of the subdivided complex: its barycentric coordinates in the original
  // complex, keyed by original vertex index. Original vertices carry {v: 1}.
  std::vector<std::map<int, Rational>> carrier;
  std::size_t starrings = 0;
};

// Subdivides X until (a) every simplex attains min |f| at a vertex and (b) no edge has
// a transversal zero of any component f_i in its interior. Argmin starring visits
// simplices by decreasing dimension, then by vertex-id list; each bad simplex is starred
// at its norm minimizer (on the face carrying it). Both phases repeat until neither
// changes anything. New vertex ids encode their exact original barycentric coordinates.
// budget == 0 means 10 * (number of simplices of X); exceeding it throws InvariantError.
Subdivision star_subdivide(const PLMap& f, std::size_t budget = 0);

// f evaluated at a point given by barycentric coordinates over original vertices.
RationalVector evaluate_original(const PLMap& f, const std::map<int, Rational>& point);

}  // namespace rzero
