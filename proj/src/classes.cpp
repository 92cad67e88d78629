#include "rzero/classes.hpp"

#include <map>
#include <random>
#include <set>

#include "rzero/errors.hpp"

namespace rzero {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Signs: return "signs";
    case Mode::Circle: return "circle";
    case Mode::Hopf: return "hopf";
  }
  return "?";
}

Mode parse_mode(const std::string& name) {
  if (name == "signs") return Mode::Signs;
  if (name == "circle") return Mode::Circle;
  if (name == "hopf") return Mode::Hopf;
  throw InputError("unknown mode \"" + name + "\" (expected auto, signs, circle or hopf)");
}

namespace {

const char* kRegimes = "supported regimes: signs (n = 1), circle (n = 2), hopf (dim X <= n)";

}  // namespace

void check_mode(Mode mode, int n, int m) {
  bool ok = (mode == Mode::Signs && n == 1) || (mode == Mode::Circle && n == 2) || (mode == Mode::Hopf && m <= n);
  if (!ok)
    throw ModeError("mode " + to_string(mode) + " does not apply to n = " + std::to_string(n) +
                    ", dim X = " + std::to_string(m) + "; " + kRegimes);
}

Mode select_mode(int n, int m) {
  if (n == 1) return Mode::Signs;
  if (n == 2) return m <= 2 ? Mode::Hopf : Mode::Circle;
  if (m <= n) return Mode::Hopf;
  throw ModeError("no mode applies to n = " + std::to_string(n) + ", dim X = " + std::to_string(m) + "; " +
                  kRegimes);
}

bool determinacy(int n, int m) { return n <= 2 || m <= 2 * n - 3; }

std::vector<SignComponent> sign_vector(const PLMap& f, const Subcomplex& level) {
  if (f.n != 1) throw ModeError("sign vectors need n = 1");
  std::vector<SignComponent> out;
  for (auto& comp : connected_components(level)) {
    SignComponent c;
    c.sign = sgn(f.values[static_cast<std::size_t>(comp.front())][0]);
    for (int v : comp)
      if (c.sign == 0 || sgn(f.values[static_cast<std::size_t>(v)][0]) != c.sign)
        throw InvariantError("sign_vector: component without a constant nonzero sign");
    c.vertices = std::move(comp);
    out.push_back(std::move(c));
  }
  return out;
}

IntVector sign_cocycle(const PLMap& f, const Subcomplex& level) {
  IntVector z(f.complex->vertex_count(), Integer(0));
  for (const auto& c : sign_vector(f, level))
    for (int v : c.vertices) z[static_cast<std::size_t>(v)] = c.sign;
  return z;
}

namespace {

Rational cross(const RationalVector& a, const RationalVector& b) { return a[0] * b[1] - a[1] * b[0]; }
Rational dot(const RationalVector& a, const RationalVector& b) { return a[0] * b[0] + a[1] * b[1]; }

bool on_ray(const RationalVector& e, const RationalVector& p) { return sgn(cross(e, p)) == 0 && sgn(dot(e, p)) > 0; }

// Uniform integer in [lo, hi].
long draw(std::mt19937_64& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

constexpr int kRetries = 32;

}  // namespace

IntVector winding_cocycle(const PLMap& f, const Subcomplex& level, const RationalVector& e) {
  if (f.n != 2) throw ModeError("winding cocycles need n = 2");
  if (e.size() != 2 || (sgn(e[0]) == 0 && sgn(e[1]) == 0)) throw InputError("ray direction must be a nonzero 2-vector");
  const Complex& x = *f.complex;
  for (std::size_t v = 0; v < x.vertex_count(); ++v)
    if (level.contains_vertex(static_cast<int>(v)) && on_ray(e, f.values[v]))
      throw InputError("vertex \"" + x.vertex_id(static_cast<int>(v)) + "\" maps onto the ray");
  const auto& edges = x.simplices(1);
  IntVector z(edges.size(), Integer(0));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!level.contains(1, i)) continue;
    const auto& p = f.values[static_cast<std::size_t>(edges[i][0])];
    const auto& q = f.values[static_cast<std::size_t>(edges[i][1])];
    int sp = sgn(cross(e, p)), sq = sgn(cross(e, q));
    if (sp * sq >= 0) continue;
    // crossing point p + t (q - p) lies on the line through e
    Rational t = cross(e, p) / (cross(e, p) - cross(e, q));
    RationalVector c{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
    int side = sgn(dot(e, c));
    if (side == 0) throw InvariantError("winding_cocycle: edge image passes through the origin");
    if (side > 0) z[i] = sp < 0 ? 1 : -1;
  }
  return z;
}

namespace {

enum class ProbeHit { Outside, Inside, Degenerate };

// Position of p relative to the image of an n-simplex; sign receives the orientation.
ProbeHit locate_probe(const std::vector<RationalVector>& values, const RationalVector& p, int& sign) {
  std::size_t n = p.size();
  FieldMatrix a(n + 1, n + 1);
  FieldVector b(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(j, i) = values[i][j];
    a(n, i) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) b[j] = p[j];
  b[n] = 1;
  Field q = Field::rationals();
  if (rank(q, a) < n + 1) return solve(q, a, b) ? ProbeHit::Degenerate : ProbeHit::Outside;
  auto lambda = solve(q, a, b);
  bool interior = true;
  for (const auto& l : *lambda) {
    if (sgn(l) < 0) return ProbeHit::Outside;
    if (sgn(l) == 0) interior = false;
  }
  if (!interior) return ProbeHit::Degenerate;
  IntMatrix lin(n, n);
  Integer den = 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j) den = lcm(den, Rational(values[i][j] - values[0][j]).get_den());
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational d = (values[i][j] - values[0][j]) * den;
      lin(j, i - 1) = d.get_num();
    }
  sign = sgn(determinant(lin));
  return ProbeHit::Inside;
}

// Orientation sign of every n-simplex whose image contains p, zero elsewhere.
IntVector probe_signs(const PLMap& f, const RationalVector& p) {
  if (p.size() != static_cast<std::size_t>(f.n)) throw InputError("probe dimension differs from n");
  const auto& top = f.complex->simplices(f.n);
  IntVector z(top.size(), Integer(0));
  for (std::size_t i = 0; i < top.size(); ++i) {
    int sign = 0;
    ProbeHit hit = locate_probe(f.simplex_values(top[i]), p, sign);
    if (hit == ProbeHit::Degenerate) throw InputError("probe is not a regular value");
    if (hit == ProbeHit::Inside) z[i] = sign;
  }
  return z;
}

IntVector mask_level(IntVector z, int n, const Subcomplex& level) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (level.contains(n, i)) z[i] = 0;
  return z;
}

}  // namespace

IntVector degree_cocycle(const PLMap& f, const Subcomplex& level, const RationalVector& p) {
  return mask_level(probe_signs(f, p), f.n, level);
}

bool admissible_ray(const PLMap& f, const RationalVector& e) {
  if (e.size() != 2 || (sgn(e[0]) == 0 && sgn(e[1]) == 0)) return false;
  for (const auto& v : f.values)
    if (on_ray(e, v)) return false;
  return true;
}

bool admissible_probe(const PLMap& f, const RationalVector& p) {
  if (p.size() != static_cast<std::size_t>(f.n)) return false;
  for (const auto& s : f.complex->simplices(f.n)) {
    int sign = 0;
    if (locate_probe(f.simplex_values(s), p, sign) == ProbeHit::Degenerate) return false;
  }
  return true;
}

RationalVector choose_ray(const PLMap& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    RationalVector e{Rational(draw(rng, -1000, 1000)), Rational(draw(rng, -1000, 1000))};
    if (admissible_ray(f, e)) return e;
  }
  throw InvariantError("no admissible ray after " + std::to_string(kRetries) + " attempts");
}

RationalVector choose_probe(const PLMap& f, const ExactRadius& below, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // every coordinate below bound / (2n) keeps each norm of p under the bound
  Rational scale = below.lower_bound() / (2 * f.n * 1000);
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    RationalVector p;
    for (int j = 0; j < f.n; ++j) p.push_back(scale * draw(rng, -999, 999));
    if (admissible_probe(f, p)) return p;
  }
  throw InvariantError("no regular probe after " + std::to_string(kRetries) + " attempts");
}

namespace {

std::vector<int> component_of(const ComplexPtr& x) {
  std::vector<int> label(x->vertex_count(), -1);
  auto comps = connected_components(Subcomplex::whole(x));
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) label[static_cast<std::size_t>(v)] = static_cast<int>(c);
  return label;
}

bool any_nonzero(const IntVector& v) { return !is_zero(v); }

}  // namespace

PointedModule assemble_pointed_module(const Filtration& filtration, Mode mode, const ModuleOptions& options) {
  const PLMap& f = filtration.f;
  const ComplexPtr& x = f.complex;
  PointedModule out;
  out.mode = mode;
  out.n = f.n;
  out.m = x->dimension();
  out.samples = filtration.samples;
  out.seed = options.seed;
  check_mode(mode, out.n, out.m);
  Subcomplex whole = Subcomplex::whole(x);

  std::vector<int> x_component;
  std::shared_ptr<const CohomologyGroup> h1_x, hn_x;
  IntVector probe_hits;
  if (mode == Mode::Signs) x_component = component_of(x);
  if (mode == Mode::Circle) {
    h1_x = std::make_shared<CohomologyGroup>(CochainPair::absolute(whole), 1);
    out.ray = options.ray ? *options.ray : choose_ray(f, options.seed);
    if (!admissible_ray(f, *out.ray)) throw InputError("ray passes through a vertex value");
  }
  if (mode == Mode::Hopf) {
    hn_x = std::make_shared<CohomologyGroup>(CochainPair::absolute(whole), f.n);
    out.probe = options.probe ? *options.probe : choose_probe(f, filtration.samples.front(), options.seed);
    if (vector_norm(*out.probe, f.norm) >= filtration.samples.front())
      throw InputError("probe norm must be below the smallest sample radius");
    probe_hits = probe_signs(f, *out.probe);
  }

  for (std::size_t i = 0; i < filtration.size(); ++i) {
    const Subcomplex& level = filtration.levels[i];
    std::shared_ptr<const ClassGroup> group;
    IntVector cocycle;
    bool nontrivial = false;
    switch (mode) {
      case Mode::Signs: {
        group = std::make_shared<CohomologyGroup>(CochainPair::absolute(level), 0);
        cocycle = sign_cocycle(f, level);
        std::map<int, std::set<int>> signs;
        for (std::size_t v = 0; v < x->vertex_count(); ++v)
          if (level.contains_vertex(static_cast<int>(v))) signs[x_component[v]].insert(sgn(cocycle[v]));
        for (const auto& [c, s] : signs)
          if (s.size() > 1) nontrivial = true;
        break;
      }
      case Mode::Circle: {
        group = std::make_shared<CohomologyGroup>(CochainPair::absolute(level), 1);
        cocycle = winding_cocycle(f, level, *out.ray);
        InducedMap restrict = induced_map(*h1_x, *group);
        auto c = group->coordinates(cocycle);
        IntMatrix aug(group->size(), h1_x->size() + group->size());
        for (std::size_t r = 0; r < group->size(); ++r) {
          for (std::size_t k = 0; k < h1_x->size(); ++k) aug(r, k) = restrict.matrix(r, k);
          aug(r, h1_x->size() + r) = group->orders()[r];
        }
        nontrivial = !solve_integer(aug, *c).has_value();
        break;
      }
      case Mode::Hopf: {
        auto relative = std::make_shared<CohomologyGroup>(CochainPair::relative(whole, level), f.n);
        InducedMap j = induced_map(*relative, *hn_x);
        group = std::make_shared<KernelSubgroup>(relative, *hn_x, j);
        cocycle = mask_level(probe_hits, f.n, level);
        break;
      }
    }
    auto coords = group->coordinates(cocycle);
    if (!coords) throw InvariantError("distinguished class lies outside its group at sample " + std::to_string(i));
    if (mode == Mode::Hopf) nontrivial = any_nonzero(*coords);
    out.groups.push_back(group);
    out.distinguished.push_back(*coords);
    out.nontrivial.push_back(nontrivial);
    if (i > 0) out.transitions.push_back(induced_map(*out.groups[i - 1], *group).matrix);
  }

  for (std::size_t i = out.samples.size(); i-- > 0;)
    if (out.nontrivial[i]) {
      out.robust.radius = out.samples[i];
      out.robust.level = i;
      const Subcomplex& level = filtration.levels[i];
      if (mode == Mode::Signs) {
        std::map<int, std::pair<int, int>> seen;  // component -> (negative vertex, positive vertex)
        for (std::size_t v = 0; v < x->vertex_count(); ++v) {
          if (!level.contains_vertex(static_cast<int>(v))) continue;
          auto& slot = seen.try_emplace(x_component[v], -1, -1).first->second;
          int s = sgn(f.values[v][0]);
          if (s < 0 && slot.first < 0) slot.first = static_cast<int>(v);
          if (s > 0 && slot.second < 0) slot.second = static_cast<int>(v);
        }
        for (const auto& [c, pr] : seen)
          if (pr.first >= 0 && pr.second >= 0) {
            out.robust.witness = "opposite signs at " + x->vertex_id(pr.first) + " and " + x->vertex_id(pr.second) +
                                 " in one component";
            break;
          }
      } else {
        std::string coords;
        for (const auto& c : out.distinguished[i]) coords += (coords.empty() ? "" : ",") + c.get_str();
        out.robust.witness = "nonzero class (" + coords + ")";
      }
      break;
    }
  return out;
}

RobustRadius robust_radius(const Filtration& filtration, Mode mode, const ModuleOptions& options) {
  return assemble_pointed_module(filtration, mode, options).robust;
}

FieldModule tensor(const PointedModule& module, const Field& field) {
  FieldModule out;
  out.field = field;
  out.samples = module.samples;
  std::vector<std::vector<std::size_t>> kept(module.samples.size());
  Integer p(static_cast<unsigned long>(field.characteristic));
  for (std::size_t i = 0; i < module.samples.size(); ++i) {
    const auto& orders = module.groups[i]->orders();
    for (std::size_t g = 0; g < orders.size(); ++g)
      if (orders[g] == 0 || (!field.is_rationals() && mpz_divisible_p(orders[g].get_mpz_t(), p.get_mpz_t())))
        kept[i].push_back(g);
    out.dims.push_back(kept[i].size());
    FieldVector a;
    for (std::size_t g : kept[i]) a.push_back(field.reduce(module.distinguished[i][g]));
    out.distinguished.push_back(std::move(a));
  }
  for (std::size_t i = 0; i + 1 < module.samples.size(); ++i) {
    FieldMatrix t(kept[i + 1].size(), kept[i].size());
    for (std::size_t r = 0; r < kept[i + 1].size(); ++r)
      for (std::size_t c = 0; c < kept[i].size(); ++c)
        t(r, c) = field.reduce(module.transitions[i](kept[i + 1][r], kept[i][c]));
    out.transitions.push_back(std::move(t));
  }
  if (module.mode == Mode::Signs) {
    out.robust_override = true;
    out.robust_level = module.robust.level;
  }
  return out;
}

}  // namespace rzero
