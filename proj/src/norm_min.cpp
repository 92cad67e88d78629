#include "rzero/norm_min.hpp"

#include <optional>

#include "rzero/errors.hpp"
#include "rzero/matrix.hpp"

namespace rzero {

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::Linf: return "linf";
  }
  return "?";
}

Norm parse_norm(const std::string& name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  if (name == "linf") return Norm::Linf;
  throw InputError("unknown norm \"" + name + "\" (expected l1, l2 or linf)");
}

ExactRadius vector_norm(const RationalVector& v, Norm norm) {
  Rational acc = 0;
  switch (norm) {
    case Norm::L1:
      for (const auto& x : v) acc += abs(x);
      return ExactRadius::rat(acc);
    case Norm::Linf:
      for (const auto& x : v)
        if (abs(x) > acc) acc = abs(x);
      return ExactRadius::rat(acc);
    case Norm::L2:
      for (const auto& x : v) acc += x * x;
      return ExactRadius::sqrt_of(acc);
  }
  return {};
}

namespace {

// Unique solution of a square system, or nullopt when singular.
std::optional<RationalVector> solve_square(FieldMatrix a, RationalVector b) {
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
      std::swap(b[c], b[p]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t support_size(const RationalVector& lambda) {
  std::size_t s = 0;
  for (const auto& x : lambda)
    if (sgn(x) != 0) ++s;
  return s;
}

RationalVector combine(const std::vector<RationalVector>& values, const RationalVector& lambda) {
  RationalVector y(values.front().size(), Rational(0));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += lambda[i] * values[i][j];
  return y;
}

struct Candidate {
  Rational objective;
  RationalVector lambda;
};

void offer(std::optional<Candidate>& best, Rational objective, RationalVector lambda) {
  if (!best || objective < best->objective ||
      (objective == best->objective && support_size(lambda) < support_size(best->lambda)))
    best = Candidate{std::move(objective), std::move(lambda)};
}

// min c.z subject to sum(lambda) = 1 and A z <= b, z = (lambda, aux). The feasible
// region is pointed and bounded below in the objective, so a vertex is optimal.
// Each basic point is solved fraction-free: Bareiss elimination yields the determinant D
// and the integer numerators D z.
Candidate lp_by_vertices(std::size_t k, const FieldMatrix& a, const RationalVector& b, const RationalVector& c) {
  std::size_t d = a.cols(), rows = a.rows();
  // [A | b] with every row scaled by a positive integer
  IntMatrix ai(rows, d + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer den = b[i].get_den();
    for (std::size_t j = 0; j < d; ++j) den = lcm(den, Integer(a(i, j).get_den()));
    for (std::size_t j = 0; j < d; ++j) ai(i, j) = a(i, j).get_num() * (den / a(i, j).get_den());
    ai(i, d) = b[i].get_num() * (den / b[i].get_den());
  }
  IntVector ci(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (c[j].get_den() != 1) throw InvariantError("simplex_norm_min: objective must be integral");
    ci[j] = c[j].get_num();
  }

  IntMatrix sys(d, d + 1);
  IntVector x(d), best_x;
  Integer det, prev, t, lhs, obj, best_obj, best_det, left, right;
  std::size_t best_support = 0;
  bool found = false;
  for_each_subset(rows, d - 1, [&](const std::vector<std::size_t>& tight) {
    for (std::size_t j = 0; j < d; ++j) sys(0, j) = j < k ? 1 : 0;
    sys(0, d) = 1;
    for (std::size_t r = 0; r < tight.size(); ++r)
      for (std::size_t j = 0; j <= d; ++j) sys(r + 1, j) = ai(tight[r], j);
    prev = 1;
    for (std::size_t p = 0; p < d; ++p) {
      if (sgn(sys(p, p)) == 0) {
        std::size_t q = p + 1;
        while (q < d && sgn(sys(q, p)) == 0) ++q;
        if (q == d) return;
        for (std::size_t j = p; j <= d; ++j) swap(sys(p, j), sys(q, j));
      }
      for (std::size_t i = p + 1; i < d; ++i)
        for (std::size_t j = p + 1; j <= d; ++j) {
          t = sys(i, j) * sys(p, p);
          t -= sys(i, p) * sys(p, j);
          mpz_divexact(sys(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
      prev = sys(p, p);
    }
    det = sys(d - 1, d - 1);
    for (std::size_t i = d; i-- > 0;) {
      t = det * sys(i, d);
      for (std::size_t j = i + 1; j < d; ++j) t -= sys(i, j) * x[j];
      mpz_divexact(x[i].get_mpz_t(), t.get_mpz_t(), sys(i, i).get_mpz_t());
    }
    if (sgn(det) < 0) {
      det = -det;
      for (auto& v : x) v = -v;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      lhs = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(ai(i, j)) != 0) lhs += ai(i, j) * x[j];
      if (lhs > ai(i, d) * det) return;
    }
    obj = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(ci[j]) != 0) obj += ci[j] * x[j];
    std::size_t support = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(x[j]) != 0) ++support;
    if (found) {
      left = obj * best_det;
      right = best_obj * det;
      if (left > right || (left == right && support >= best_support)) return;
    }
    found = true;
    best_obj = obj;
    best_det = det;
    best_x = x;
    best_support = support;
  });
  if (!found) throw InvariantError("simplex_norm_min: LP has no basic feasible point");
  Candidate out{Rational(best_obj, best_det), RationalVector(k)};
  out.objective.canonicalize();
  for (std::size_t j = 0; j < k; ++j) {
    out.lambda[j] = Rational(best_x[j], best_det);
    out.lambda[j].canonicalize();
  }
  return out;
}

Candidate minimize_polyhedral(const std::vector<RationalVector>& values, Norm norm) {
  std::size_t k = values.size(), n = values.front().size();
  std::size_t aux = norm == Norm::Linf ? 1 : n;
  std::size_t d = k + aux;
  FieldMatrix a(k + 2 * n, d);
  RationalVector b(k + 2 * n, Rational(0)), c(d, Rational(0));
  for (std::size_t i = 0; i < k; ++i) a(i, i) = -1;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t up = k + 2 * j, down = up + 1;
    for (std::size_t i = 0; i < k; ++i) {
      a(up, i) = values[i][j];
      a(down, i) = -values[i][j];
    }
    std::size_t bound = norm == Norm::Linf ? k : k + j;
    a(up, bound) = -1;
    a(down, bound) = -1;
  }
  for (std::size_t j = k; j < d; ++j) c[j] = 1;
  return lp_by_vertices(k, a, b, c);
}

Candidate minimize_euclidean(const std::vector<RationalVector>& values) {
  std::size_t k = values.size();
  std::optional<Candidate> best;
  for (std::size_t size = 1; size <= k; ++size) {
    for_each_subset(k, size, [&](const std::vector<std::size_t>& face) {
      // [G 1; 1^T 0] [l; mu] = [0; 1] is nonsingular iff the face values are affinely independent
      std::size_t s = face.size();
      FieldMatrix sys(s + 1, s + 1);
      RationalVector rhs(s + 1, Rational(0));
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
          Rational dot = 0;
          for (std::size_t t = 0; t < values[face[i]].size(); ++t) dot += values[face[i]][t] * values[face[j]][t];
          sys(i, j) = dot;
        }
        sys(i, s) = 1;
        sys(s, i) = 1;
      }
      rhs[s] = 1;
      auto z = solve_square(std::move(sys), std::move(rhs));
      if (!z) return;
      RationalVector lambda(k, Rational(0));
      for (std::size_t i = 0; i < s; ++i) {
        if (sgn((*z)[i]) < 0) return;
        lambda[face[i]] = (*z)[i];
      }
      RationalVector y = combine(values, lambda);
      Rational sq = 0;
      for (const auto& x : y) sq += x * x;
      offer(best, sq, std::move(lambda));
    });
  }
  return *best;
}

}  // namespace

NormMin simplex_norm_min(const std::vector<RationalVector>& values, Norm norm) {
  if (values.empty()) throw InputError("simplex_norm_min: no vertices");
  std::size_t n = values.front().size();
  if (n == 0) throw InputError("simplex_norm_min: zero-dimensional values");
  for (const auto& v : values)
    if (v.size() != n) throw InputError("simplex_norm_min: value dimension mismatch");

  Candidate best = norm == Norm::L2 ? minimize_euclidean(values) : minimize_polyhedral(values, norm);
  NormMin out;
  out.min = norm == Norm::L2 ? ExactRadius::sqrt_of(best.objective) : ExactRadius::rat(best.objective);
  out.barycentric = std::move(best.lambda);
  for (const auto& v : values)
    if (vector_norm(v, norm) == out.min) {
      out.at_vertex = true;
      break;
    }
  return out;
}

}  // namespace rzero
