#include "rzero/filtration.hpp"

#include <algorithm>

#include "rzero/errors.hpp"
#include "rzero/norm_min.hpp"

namespace rzero {

CriticalSet critical_values(const PLMap& f) {
  f.validate();
  const Complex& c = *f.complex;
  std::vector<ExactRadius> norms;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) norms.push_back(f.vertex_norm(static_cast<int>(v)));
  for (int q = 1; q <= c.dimension(); ++q)
    for (const auto& s : c.simplices(q)) {
      NormMin m = simplex_norm_min(f.simplex_values(s), f.norm);
      if (!m.at_vertex) {
        std::string ids;
        for (int v : s) ids += (ids.empty() ? "" : ",") + c.vertex_id(v);
        throw InvariantError("critical_values: minimum on simplex {" + ids + "} is not attained at a vertex");
      }
    }
  CriticalSet out;
  std::sort(norms.begin(), norms.end());
  for (const auto& r : norms) {
    if (r.is_zero()) {
      out.has_zero_min = true;
      continue;
    }
    if (out.values.empty() || !(out.values.back() == r)) out.values.push_back(r);
  }
  return out;
}

std::vector<ExactRadius> sample_radii(const CriticalSet& c) {
  if (c.values.empty()) return {ExactRadius::rat(1)};
  std::vector<ExactRadius> out(c.values.begin(), c.values.end());
  const ExactRadius& top = c.values.back();
  if (auto q = top.as_rational())
    out.push_back(ExactRadius::rat(*q + 1));
  else {
    Rational ub = top.upper_bound();
    Integer ceil;
    mpz_cdiv_q(ceil.get_mpz_t(), ub.get_num_mpz_t(), ub.get_den_mpz_t());
    out.push_back(ExactRadius::rat(Rational(ceil) + 1));
  }
  return out;
}

Subcomplex superlevel(const PLMap& f, const ExactRadius& r) {
  return full_subcomplex(f.complex, [&](int v) { return f.vertex_norm(v) >= r; });
}

Filtration build_filtration(const PLMap& f) {
  Filtration out;
  out.f = f;
  out.criticals = critical_values(f);
  out.samples = sample_radii(out.criticals);
  for (const auto& r : out.samples) out.levels.push_back(superlevel(f, r));
  return out;
}

}  // namespace rzero
