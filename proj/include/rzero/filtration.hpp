#pragma once

#include <vector>

#include "rzero/complex.hpp"

namespace rzero {

struct CriticalSet {
  std::vector<ExactRadius> values;  // positive, strictly increasing
  bool has_zero_min = false;
};

// Distinct positive vertex norms. f must already be subdivided so that every simplex
// attains its minimum at a vertex; this is rechecked and violations throw InvariantError.
CriticalSet critical_values(const PLMap& f);

// r_i = s_{i+1} for i < k and r_k above s_k (s_k + 1 for rational s_k, an integer
// upper bound of s_k plus 1 otherwise); a single sample 1 when there are no criticals.
std::vector<ExactRadius> sample_radii(const CriticalSet& c);

struct Filtration {
  PLMap f;
  CriticalSet criticals;
  std::vector<ExactRadius> samples;
  std::vector<Subcomplex> levels;  // levels[i]: full subcomplex on |f(v)| >= samples[i]

  std::size_t size() const { return samples.size(); }
  const ComplexPtr& complex() const { return f.complex; }
};

Subcomplex superlevel(const PLMap& f, const ExactRadius& r);

// f must be subdivided.
Filtration build_filtration(const PLMap& f);

}  // namespace rzero
