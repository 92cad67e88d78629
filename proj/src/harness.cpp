#include "rzero/harness.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "rzero/errors.hpp"

namespace rzero {

Analysis analyze(const PLMap& f, const AnalysisOptions& options) {
  f.validate();
  Analysis a;
  Mode mode = options.mode ? *options.mode : select_mode(f.n, f.complex->dimension());
  check_mode(mode, f.n, f.complex->dimension());
  a.auto_mode = !options.mode;
  a.subdivision = star_subdivide(f, options.budget);
  a.filtration = build_filtration(a.subdivision.map);
  a.module = assemble_pointed_module(a.filtration, mode, options.module);
  return a;
}

PointedBarcode analysis_barcode(const Analysis& a, const Field& field) { return barcode(tensor(a.module, field)); }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  std::uint64_t state = master, out = 0;
  for (std::size_t i = 0; i <= trial; ++i) out = splitmix64(state);
  return out;
}

PLMap perturb(const PLMap& f, const PerturbSpec& spec) {
  if (sgn(spec.delta) < 0) throw InputError("perturbation bound must be non-negative");
  if (spec.denominator == 0) throw InputError("perturbation denominator must be positive");
  PLMap g = f;
  if (sgn(spec.delta) == 0) return g;
  Integer c = 1;
  if (f.norm == Norm::L1) c = f.n;
  if (f.norm == Norm::L2) {
    c = sqrt(Integer(f.n));
    if (c * c < f.n) c += 1;
  }
  Rational step = spec.delta / (Rational(c) * Rational(Integer(std::to_string(spec.denominator))));
  std::mt19937_64 rng(spec.seed);
  std::uint64_t span = 2 * spec.denominator + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (auto& v : g.values)
    for (auto& x : v) {
      std::uint64_t r;
      do r = rng();
      while (r >= limit);
      long k = static_cast<long>(r % span) - static_cast<long>(spec.denominator);
      x += step * k;
    }
  return g;
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

RadiusGap as_gap(const Rational& q) { return RadiusGap(ExactRadius::rat(q)); }

std::string describe(const PointedBarcode& b) {
  std::ostringstream out;
  for (const auto& bar : b.bars) {
    out << "(" << bar.interval.birth.to_string() << "," << bar.interval.death.to_string() << "]";
    if (bar.multiplicity > 1) out << "x" << bar.multiplicity;
    out << " ";
  }
  if (b.distinguished)
    out << "dist (" << b.distinguished->birth.to_string() << "," << b.distinguished->death.to_string() << "]";
  return out.str();
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

IntMatrix normalized(IntMatrix m, const std::vector<Integer>& orders) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (orders[r] != 0)
      for (std::size_t c = 0; c < m.cols(); ++c) mpz_mod(m(r, c).get_mpz_t(), m(r, c).get_mpz_t(), orders[r].get_mpz_t());
  return m;
}

IntVector normalized(IntVector v, const std::vector<Integer>& orders) {
  for (std::size_t r = 0; r < v.size(); ++r)
    if (orders[r] != 0) mpz_mod(v[r].get_mpz_t(), v[r].get_mpz_t(), orders[r].get_mpz_t());
  return v;
}

PointedBarcode scaled(const PointedBarcode& b, const Rational& c) {
  auto scale = [&](const Interval& i) { return Interval{i.birth.scaled(c), i.death.scaled(c)}; };
  std::vector<Bar> bars;
  for (const auto& bar : b.bars) bars.push_back({scale(bar.interval), bar.multiplicity});
  std::optional<Interval> d;
  if (b.distinguished) d = scale(*b.distinguished);
  return make_barcode(std::move(bars), d);
}

std::vector<std::vector<Integer>> all_orders(const PointedModule& m) {
  std::vector<std::vector<Integer>> out;
  for (const auto& g : m.groups) out.push_back(g->orders());
  return out;
}

// Run fn and record an exception as a failed check.
template <class Fn>
void guarded(Report& report, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report.add(name, false, std::string("error: ") + e.what());
  }
}

}  // namespace

Report check_stability(const PLMap& f, Mode mode, const Field& field, const Rational& delta, std::size_t trials,
                       std::uint64_t seed, unsigned threads) {
  AnalysisOptions base_options{mode, ModuleOptions{seed, std::nullopt, std::nullopt}, 0};
  Analysis base = analyze(f, base_options);
  PointedBarcode bf = analysis_barcode(base, field);
  const ExactRadius& rho_f = base.module.robust.radius;
  std::vector<CheckResult> results(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    std::uint64_t s = trial_seed(seed, t);
    CheckResult& r = results[t];
    r.name = "trial " + std::to_string(t) + " seed " + std::to_string(s);
    try {
      PLMap g = perturb(f, {delta, s});
      Analysis ag = analyze(g, {mode, ModuleOptions{s, std::nullopt, std::nullopt}, 0});
      PointedBarcode bg = analysis_barcode(ag, field);
      RadiusGap d = bottleneck(bf, bg);
      RadiusGap drho{rho_f, ag.module.robust.radius};
      r.passed = d <= as_gap(delta) && drho <= as_gap(delta);
      r.detail = "bottleneck " + d.to_string() + ", robust radius " + ag.module.robust.radius.to_string();
      if (!r.passed) r.detail += "; f: " + describe(bf) + "; g: " + describe(bg);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
  });
  Report report;
  report.checks = std::move(results);
  return report;
}

Report check_invariances(const PLMap& f, Mode mode, const Field& field, std::uint64_t seed, std::size_t resamples) {
  Report report;
  AnalysisOptions options{mode, ModuleOptions{seed, std::nullopt, std::nullopt}, 0};
  Analysis a = analyze(f, options);
  const PointedModule& m = a.module;
  PointedBarcode bf = analysis_barcode(a, field);

  guarded(report, "functoriality", [&] {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < m.groups.size(); ++i) {
      IntMatrix composite = IntMatrix::identity(m.groups[i]->size());
      for (std::size_t j = i + 1; j < m.groups.size(); ++j) {
        composite = normalized(m.transitions[j - 1] * composite, m.groups[j]->orders());
        IntMatrix direct = normalized(induced_map(*m.groups[i], *m.groups[j]).matrix, m.groups[j]->orders());
        if (!(direct == composite)) {
          ok = false;
          detail = "samples " + std::to_string(i) + " -> " + std::to_string(j);
        }
      }
    }
    report.add("functoriality", ok, detail);
  });

  guarded(report, "pointed transitions", [&] {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < m.groups.size(); ++i)
      if (!(normalized(m.transitions[i] * m.distinguished[i], m.groups[i + 1]->orders()) == m.distinguished[i + 1]))
        ok = false;
    report.add("pointed transitions", ok);
  });

  for (const Rational& c : {Rational(2), Rational(3), Rational(7, 2)}) {
    std::string name = "scaling by " + format_rational(c);
    guarded(report, name, [&] {
      Analysis ac = analyze(f.scaled(c), options);
      bool ok = ac.module.robust.radius == m.robust.radius.scaled(c);
      const auto& s1 = a.filtration.criticals.values;
      const auto& s2 = ac.filtration.criticals.values;
      ok = ok && s1.size() == s2.size();
      for (std::size_t i = 0; ok && i < s1.size(); ++i) ok = s2[i] == s1[i].scaled(c);
      ok = ok && all_orders(ac.module) == all_orders(m);
      PointedBarcode bc = analysis_barcode(ac, field);
      ok = ok && bc == scaled(bf, c);
      report.add(name, ok, "robust radius " + ac.module.robust.radius.to_string());
    });
  }

  if (f.n == 2)
    guarded(report, "rotation", [&] {
      Analysis ar = analyze(f.transformed({{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}}), options);
      PointedBarcode br = analysis_barcode(ar, field);
      FieldModule t1 = tensor(m, field), t2 = tensor(ar.module, field);
      bool ok = br == bf && ar.module.robust.radius == m.robust.radius && t1.dims == t2.dims;
      report.add("rotation", ok, describe(br));
    });

  if (f.n == 1)
    guarded(report, "negation", [&] {
      Analysis an = analyze(f.negated(), options);
      bool ok = an.module.robust.radius == m.robust.radius &&
                tensor(an.module, field).dims == tensor(m, field).dims;
      report.add("negation", ok, "robust radius " + an.module.robust.radius.to_string());
    });

  if (f.n == 1 && f.complex->dimension() == 1)
    guarded(report, "signs/hopf cross-check", [&] {
      Analysis as = analyze(f, {Mode::Signs, options.module, 0});
      Analysis ah = analyze(f, {Mode::Hopf, options.module, 0});
      bool ok = as.module.robust.radius == ah.module.robust.radius;
      report.add("signs/hopf cross-check", ok,
                 as.module.robust.radius.to_string() + " vs " + ah.module.robust.radius.to_string());
    });

  const PLMap& fs = a.filtration.f;
  if (f.complex->dimension() <= f.n)
    guarded(report, "probe independence", [&] {
      PointedModule ref = assemble_pointed_module(a.filtration, Mode::Hopf, options.module);
      bool ok = true;
      for (std::size_t t = 0; t < resamples; ++t) {
        RationalVector p = choose_probe(fs, a.filtration.samples.front(), trial_seed(seed ^ 0x5eedULL, t));
        PointedModule other = assemble_pointed_module(a.filtration, Mode::Hopf, {seed, p, std::nullopt});
        if (other.distinguished != ref.distinguished) ok = false;
      }
      report.add("probe independence", ok, std::to_string(resamples) + " probes");
    });

  if (f.n == 2)
    guarded(report, "ray independence", [&] {
      PointedModule ref = assemble_pointed_module(a.filtration, Mode::Circle, options.module);
      bool ok = true;
      for (std::size_t t = 0; t < resamples; ++t) {
        RationalVector e = choose_ray(fs, trial_seed(seed ^ 0xa11ceULL, t));
        PointedModule other = assemble_pointed_module(a.filtration, Mode::Circle, {seed, std::nullopt, e});
        if (other.distinguished != ref.distinguished) ok = false;
      }
      report.add("ray independence", ok, std::to_string(resamples) + " rays");
    });

  guarded(report, "subdivision idempotence", [&] {
    Subdivision again = star_subdivide(fs);
    report.add("subdivision idempotence", again.starrings == 0);
  });
  return report;
}

Report check_exactness(const PLMap& f, std::uint64_t seed) {
  (void)seed;
  Report report;
  Subdivision sub = star_subdivide(f);
  Filtration filt = build_filtration(sub.map);
  const ComplexPtr& x = filt.complex();
  int top = x->dimension();
  Subcomplex whole = Subcomplex::whole(x);

  std::vector<CochainPair> pairs{CochainPair::absolute(whole)};
  for (const auto& level : filt.levels) {
    pairs.push_back(CochainPair::absolute(level));
    pairs.push_back(CochainPair::relative(whole, level));
  }

  guarded(report, "d^2 = 0", [&] {
    bool ok = true;
    for (const auto& p : pairs)
      for (int q = -1; q < top; ++q) {
        IntMatrix dd = p.coboundary(q + 1) * p.coboundary(q);
        for (std::size_t c = 0; c < dd.cols(); ++c)
          if (!is_zero(dd.column(c))) ok = false;
      }
    report.add("d^2 = 0", ok, std::to_string(pairs.size()) + " cochain complexes");
  });

  guarded(report, "im delta = ker j*", [&] {
    bool ok = true;
    std::string detail;
    int n = f.n;
    auto hx = std::make_shared<CohomologyGroup>(CochainPair::absolute(whole), n);
    for (std::size_t i = 0; i < filt.size(); ++i) {
      CochainPair a_pair = CochainPair::absolute(filt.levels[i]);
      CohomologyGroup ha(a_pair, n - 1);
      auto rel = std::make_shared<CohomologyGroup>(CochainPair::relative(whole, filt.levels[i]), n);
      InducedMap j = induced_map(*rel, *hx);
      KernelSubgroup ker(rel, *hx, j);
      std::vector<std::size_t> free_rows;
      for (std::size_t r = 0; r < rel->size(); ++r)
        if (rel->orders()[r] == 0) free_rows.push_back(r);
      FieldMatrix image(free_rows.size(), ha.size());
      for (std::size_t g = 0; g < ha.size(); ++g) {
        IntVector z = connecting_delta(a_pair, n - 1, ha.generator(g));
        IntVector c = *rel->coordinates(z);
        if (!is_zero(normalized(j.matrix * c, hx->orders()))) ok = false;
        if (!ker.coordinates(z)) ok = false;
        for (std::size_t r = 0; r < free_rows.size(); ++r) image(r, g) = Rational(c[free_rows[r]]);
      }
      std::size_t rank_image = rank(Field::rationals(), image);
      if (rank_image != ker.free_rank()) {
        ok = false;
        detail = "sample " + std::to_string(i) + ": rank " + std::to_string(rank_image) + " vs " +
                 std::to_string(ker.free_rank());
      }
    }
    report.add("im delta = ker j*", ok, detail);
  });

  guarded(report, "universal coefficients", [&] {
    bool ok = true;
    std::size_t count = 0;
    std::vector<Field> fields{Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)};
    for (const auto& p : pairs) {
      std::vector<CohomologyGroup> h;
      for (int q = 0; q <= top + 1; ++q) h.emplace_back(p, q);
      for (int q = 0; q <= top; ++q)
        for (const auto& k : fields) {
          ++count;
          if (field_dimension(p, q, k) != predicted_field_dimension(h[static_cast<std::size_t>(q)],
                                                                     h[static_cast<std::size_t>(q + 1)], k))
            ok = false;
        }
    }
    report.add("universal coefficients", ok, std::to_string(count) + " dimensions");
  });
  return report;
}

}  // namespace rzero
