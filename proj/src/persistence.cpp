#include "rzero/persistence.hpp"

#include <algorithm>
#include <functional>

#include "rzero/errors.hpp"

namespace rzero {

std::size_t PointedBarcode::total() const {
  std::size_t t = 0;
  for (const auto& b : bars) t += b.multiplicity;
  return t;
}

std::vector<Interval> PointedBarcode::expanded() const {
  std::vector<Interval> out;
  for (const auto& b : bars)
    for (std::size_t i = 0; i < b.multiplicity; ++i) out.push_back(b.interval);
  return out;
}

PointedBarcode make_barcode(std::vector<Bar> bars, std::optional<Interval> distinguished) {
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) { return a.interval < b.interval; });
  PointedBarcode out;
  for (auto& b : bars) {
    if (b.multiplicity == 0) continue;
    if (!(b.interval.birth < b.interval.death)) throw InvariantError("bar with birth not below death");
    if (!out.bars.empty() && out.bars.back().interval == b.interval)
      out.bars.back().multiplicity += b.multiplicity;
    else
      out.bars.push_back(b);
  }
  if (distinguished &&
      std::none_of(out.bars.begin(), out.bars.end(), [&](const Bar& b) { return b.interval == *distinguished; }))
    throw InvariantError("distinguished interval does not occur among the bars");
  out.distinguished = std::move(distinguished);
  return out;
}

namespace {

void check_shapes(const FieldModule& m) {
  std::size_t k = m.samples.size();
  if (k == 0 || m.dims.size() != k || m.distinguished.size() != k || m.transitions.size() + 1 != k)
    throw InputError("module: inconsistent number of samples");
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (m.transitions[i].rows() != m.dims[i + 1] || m.transitions[i].cols() != m.dims[i])
      throw InputError("module: transition " + std::to_string(i) + " is not composable");
  for (std::size_t i = 0; i < k; ++i)
    if (m.distinguished[i].size() != m.dims[i]) throw InputError("module: distinguished vector has the wrong size");
}

ExactRadius left_end(const FieldModule& m, std::size_t i) { return i == 0 ? ExactRadius::zero() : m.samples[i - 1]; }

bool nonzero(const FieldVector& v) {
  return std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
}

std::optional<Interval> distinguished_interval(const FieldModule& m) {
  if (m.robust_override) {
    if (!m.robust_level) return std::nullopt;
    return Interval{ExactRadius::zero(), m.samples[*m.robust_level]};
  }
  if (!nonzero(m.distinguished[0])) return std::nullopt;
  std::size_t j = 0;
  while (j + 1 < m.samples.size() && nonzero(m.distinguished[j + 1])) ++j;
  return Interval{ExactRadius::zero(), m.samples[j]};
}

}  // namespace

PointedBarcode barcode(const FieldModule& module) {
  check_shapes(module);
  const Field& k = module.field;
  std::size_t s = module.samples.size();
  // r[i][j]: rank of the composite i -> j, j >= i
  std::vector<std::vector<std::size_t>> r(s, std::vector<std::size_t>(s, 0));
  for (std::size_t i = 0; i < s; ++i) {
    FieldMatrix c = FieldMatrix::identity(module.dims[i]);
    for (std::size_t j = i; j < s; ++j) {
      r[i][j] = rank(k, c);
      if (j + 1 < s) c = multiply(k, module.transitions[j], c);
    }
  }
  auto rank_at = [&](long i, long j) -> long {
    if (i < 0 || j >= static_cast<long>(s)) return 0;
    return static_cast<long>(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  };
  std::vector<Bar> bars;
  for (long i = 0; i < static_cast<long>(s); ++i)
    for (long j = i; j < static_cast<long>(s); ++j) {
      long mult = rank_at(i, j) - rank_at(i - 1, j) - rank_at(i, j + 1) + rank_at(i - 1, j + 1);
      if (mult < 0) throw InvariantError("negative bar multiplicity");
      if (mult > 0)
        bars.push_back({{left_end(module, static_cast<std::size_t>(i)), module.samples[static_cast<std::size_t>(j)]},
                        static_cast<std::size_t>(mult)});
    }
  return make_barcode(std::move(bars), distinguished_interval(module));
}

namespace {

struct Generator {
  std::size_t birth = 0;
  std::size_t death = 0;
  std::vector<FieldVector> history;  // history[t - birth]: vector at sample t
  const FieldVector& at(std::size_t t) const { return history[t - birth]; }
  FieldVector& at(std::size_t t) { return history[t - birth]; }
};

FieldMatrix columns(const std::vector<FieldVector>& vs, std::size_t dim) {
  FieldMatrix m(dim, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = vs[j][i];
  return m;
}

}  // namespace

PointedBarcode decompose_oracle(const FieldModule& module) {
  check_shapes(module);
  std::size_t total = 0;
  for (auto d : module.dims) total += d;
  if (total > 64) throw InputError("decompose_oracle: total dimension " + std::to_string(total) + " exceeds 64");
  const Field& k = module.field;
  std::size_t s = module.samples.size();

  std::vector<Generator> gens;
  std::vector<std::size_t> alive;  // indices into gens, oldest first
  for (std::size_t i = 0; i < s; ++i) {
    std::size_t dim = module.dims[i];
    std::vector<FieldVector> current;
    for (std::size_t g : alive) current.push_back(gens[g].at(i));
    for (std::size_t e = 0; e < dim && current.size() < dim; ++e) {
      FieldVector unit(dim, Rational(0));
      unit[e] = 1;
      current.push_back(unit);
      if (rank(k, columns(current, dim)) < current.size()) {
        current.pop_back();
        continue;
      }
      gens.push_back({i, i, {unit}});
      alive.push_back(gens.size() - 1);
    }
    if (rank(k, columns(current, dim)) != dim) throw InvariantError("decompose_oracle: basis completion failed");
    if (i + 1 == s) {
      for (std::size_t g : alive) gens[g].death = i;
      break;
    }
    std::vector<std::size_t> kept;
    std::vector<FieldVector> images;
    for (std::size_t g : alive) {
      FieldVector w = apply(k, module.transitions[i], gens[g].at(i));
      auto c = images.empty() ? (nonzero(w) ? std::nullopt : std::optional<FieldVector>(FieldVector{}))
                              : solve(k, columns(images, module.dims[i + 1]), w);
      if (!c) {
        kept.push_back(g);
        images.push_back(std::move(w));
        continue;
      }
      // the younger generator absorbs older ones so that it maps to zero
      Generator& young = gens[g];
      for (std::size_t l = 0; l < c->size(); ++l) {
        if (sgn((*c)[l]) == 0) continue;
        const Generator& old = gens[kept[l]];
        for (std::size_t t = young.birth; t <= i; ++t)
          for (std::size_t e = 0; e < young.at(t).size(); ++e)
            young.at(t)[e] = k.reduce(young.at(t)[e] - (*c)[l] * old.at(t)[e]);
      }
      young.death = i;
    }
    for (std::size_t l = 0; l < kept.size(); ++l) gens[kept[l]].history.push_back(images[l]);
    alive = kept;
  }

  std::vector<Bar> bars;
  for (const auto& g : gens) bars.push_back({{left_end(module, g.birth), module.samples[g.death]}, 1});

  std::optional<Interval> distinguished = distinguished_interval(module);
  if (distinguished && !module.robust_override) {
    std::size_t j = 0;
    while (j + 1 < s && nonzero(module.distinguished[j + 1])) ++j;
    std::vector<std::size_t> at_zero;
    std::vector<FieldVector> basis;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].birth == 0) {
        at_zero.push_back(g);
        basis.push_back(gens[g].at(0));
      }
    auto coeff = solve(k, columns(basis, module.dims[0]), module.distinguished[0]);
    if (!coeff) throw InvariantError("decompose_oracle: distinguished vector outside the span");
    std::optional<std::size_t> chosen;
    for (std::size_t l = 0; l < at_zero.size() && !chosen; ++l)
      if (sgn((*coeff)[l]) != 0 && gens[at_zero[l]].death == j) chosen = at_zero[l];
    if (!chosen) throw InvariantError("decompose_oracle: no summand carries the distinguished vector");
    // replacing the chosen generator by the distinguished one keeps a basis on its support
    for (std::size_t t = 0; t <= j; ++t) {
      std::vector<FieldVector> vs;
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (gens[g].birth <= t && t <= gens[g].death) vs.push_back(g == *chosen ? module.distinguished[t] : gens[g].at(t));
      if (rank(k, columns(vs, module.dims[t])) != module.dims[t])
        throw InvariantError("decompose_oracle: distinguished summand is not a direct summand");
    }
  }
  return make_barcode(std::move(bars), distinguished);
}

namespace {

struct Side {
  std::vector<Interval> rest;
  std::optional<Interval> distinguished;
};

Side split(const PointedBarcode& b) {
  Side s;
  s.rest = b.expanded();
  if (b.distinguished) {
    s.distinguished = b.distinguished;
    s.rest.erase(std::find(s.rest.begin(), s.rest.end(), *b.distinguished));
  }
  return s;
}

bool within(const Interval& u, const Interval& v, const RadiusGap& delta) {
  return RadiusGap{u.birth, v.birth} <= delta && RadiusGap{u.death, v.death} <= delta;
}

bool removable(const Interval& u, const RadiusGap& delta, bool closed) {
  RadiusGap half = u.length().halved();
  return closed ? half <= delta : half < delta;
}

// Perfect matching on intervals plus diagonal copies, by augmenting paths.
std::optional<Matching> match_rest(const std::vector<Interval>& a, const std::vector<Interval>& b,
                                   const RadiusGap& delta, bool closed) {
  std::size_t p = a.size(), q = b.size(), n = p + q;
  // left: a[0..p), diagonal copies of b; right: b[0..q), diagonal copies of a
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t u = 0; u < p; ++u) {
    for (std::size_t v = 0; v < q; ++v)
      if (within(a[u], b[v], delta)) adj[u].push_back(v);
    if (removable(a[u], delta, closed)) adj[u].push_back(q + u);
  }
  for (std::size_t v = 0; v < q; ++v) {
    if (removable(b[v], delta, closed)) adj[p + v].push_back(v);
    for (std::size_t u = 0; u < p; ++u) adj[p + v].push_back(q + u);
  }
  std::vector<long> match_right(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    seen.assign(n, 0);
    if (!augment(u)) return std::nullopt;
  }
  Matching m;
  for (std::size_t v = 0; v < q; ++v) {
    auto u = static_cast<std::size_t>(match_right[v]);
    if (u < p)
      m.pairs.emplace_back(a[u], b[v]);
    else
      m.unmatched_second.push_back(b[v]);
  }
  for (std::size_t u = 0; u < p; ++u)
    if (static_cast<std::size_t>(match_right[q + u]) == u) m.unmatched_first.push_back(a[u]);
  return m;
}

std::optional<Matching> feasible(const PointedBarcode& a, const PointedBarcode& b, const RadiusGap& delta,
                                 bool closed) {
  Side sa = split(a), sb = split(b);
  if (sa.distinguished && sb.distinguished && within(*sa.distinguished, *sb.distinguished, delta)) {
    if (auto m = match_rest(sa.rest, sb.rest, delta, closed)) {
      m->pairs.insert(m->pairs.begin(), {*sa.distinguished, *sb.distinguished});
      m->distinguished_matched = true;
      return m;
    }
  }
  if (sa.distinguished && !removable(*sa.distinguished, delta, closed)) return std::nullopt;
  if (sb.distinguished && !removable(*sb.distinguished, delta, closed)) return std::nullopt;
  auto m = match_rest(sa.rest, sb.rest, delta, closed);
  if (m) {
    if (sa.distinguished) m->unmatched_first.push_back(*sa.distinguished);
    if (sb.distinguished) m->unmatched_second.push_back(*sb.distinguished);
  }
  return m;
}

}  // namespace

std::optional<Matching> feasible_matching(const PointedBarcode& a, const PointedBarcode& b, const RadiusGap& delta) {
  return feasible(a, b, delta, false);
}

RadiusGap bottleneck(const PointedBarcode& a, const PointedBarcode& b) {
  auto ea = a.expanded(), eb = b.expanded();
  std::vector<RadiusGap> candidates{RadiusGap{}};
  for (const auto& u : ea)
    for (const auto& v : eb) {
      candidates.emplace_back(u.birth, v.birth);
      candidates.emplace_back(u.death, v.death);
    }
  for (const auto* side : {&ea, &eb})
    for (const auto& u : *side) candidates.push_back(u.length().halved());
  std::sort(candidates.begin(), candidates.end(), [](const RadiusGap& x, const RadiusGap& y) { return x < y; });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feasible(a, b, candidates[hi], true)) throw InvariantError("bottleneck: no candidate is feasible");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, candidates[mid], true))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace rzero
