#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rzero/persistence.hpp"
#include "rzero/subdivide.hpp"

namespace rzero {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct AnalysisOptions {
  std::optional<Mode> mode;  // nullopt selects by (n, dim X)
  ModuleOptions module;
  std::size_t budget = 0;  // starring budget, 0 for the default
};

struct Analysis {
  Subdivision subdivision;
  Filtration filtration;
  PointedModule module;
  bool auto_mode = false;
};

// Subdivide, filter and assemble the pointed module.
Analysis analyze(const PLMap& f, const AnalysisOptions& options = {});

PointedBarcode analysis_barcode(const Analysis& a, const Field& field);

// One step of the splitmix64 generator.
std::uint64_t splitmix64(std::uint64_t& state);
// Seed of trial i: the (i + 1)-th splitmix64 output from the master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

struct PerturbSpec {
  Rational delta;
  std::uint64_t seed = 0;
  std::uint64_t denominator = 1u << 16;
};

// Vertex values moved by at most delta in the map's norm. Coordinates move by delta * k /
// (c * denominator) with |k| <= denominator, c = 1 (linf), n (l1) or ceil(sqrt n) (l2).
PLMap perturb(const PLMap& f, const PerturbSpec& spec);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::size_t failures() const;
  void add(std::string name, bool ok, std::string detail = "");
};

// For each trial, g = perturb(f): bottleneck(B_f, B_g) <= delta and |rho_f - rho_g| <= delta.
Report check_stability(const PLMap& f, Mode mode, const Field& field, const Rational& delta, std::size_t trials,
                       std::uint64_t seed, unsigned threads = 1);

// Functoriality, pointedness, scaling, rotation (n = 2), negation (n = 1), the
// signs/hopf cross-check (n = dim X = 1), probe and ray independence, and subdivision
// idempotence.
Report check_invariances(const PLMap& f, Mode mode, const Field& field, std::uint64_t seed,
                         std::size_t resamples = 20);

// d^2 = 0 on every constructed pair, im delta inside ker j* with equal rational ranks,
// and field dimensions against the universal-coefficient prediction.
Report check_exactness(const PLMap& f, std::uint64_t seed);

}  // namespace rzero
