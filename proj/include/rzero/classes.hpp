#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzero/cohomology.hpp"
#include "rzero/filtration.hpp"

namespace rzero {

enum class Mode { Signs, Circle, Hopf };

std::string to_string(Mode mode);
// "signs", "circle" or "hopf"; throws InputError otherwise.
Mode parse_mode(const std::string& name);
// Throws ModeError when the mode does not apply to codomain dimension n and dim X = m.
void check_mode(Mode mode, int n, int m);
// Signs for n = 1; Hopf for n = 2 with m <= 2; Circle for n = 2; Hopf for m <= n.
Mode select_mode(int n, int m);
// Whether the computed module determines the zero-set family: m <= 2n - 3 or n <= 2.
bool determinacy(int n, int m);

struct SignComponent {
  std::vector<int> vertices;
  int sign = 0;
};

// Components of a level with the sign of f on each; requires n = 1.
std::vector<SignComponent> sign_vector(const PLMap& f, const Subcomplex& level);

// Global 0-cochain: sign of f on the vertices of the level, zero elsewhere.
IntVector sign_cocycle(const PLMap& f, const Subcomplex& level);

// Signed count of crossings of each edge image f(u) -> f(v), u < v, with the open ray
// R+ e; zero off the level. Requires n = 2. Throws InputError when a vertex value of
// the level lies on the ray.
IntVector winding_cocycle(const PLMap& f, const Subcomplex& level, const RationalVector& e);

// Relative n-cocycle of (X, level): on each n-simplex outside the level, the sign of the
// linear part of f when the probe p is strictly inside its image, else 0. Zero when
// dim X < n. Throws InputError when p is not a regular value.
IntVector degree_cocycle(const PLMap& f, const Subcomplex& level, const RationalVector& p);

// Whether v avoids every ray and probe degeneracy for the map.
bool admissible_ray(const PLMap& f, const RationalVector& e);
bool admissible_probe(const PLMap& f, const RationalVector& p);

// A seeded admissible ray (n = 2) and probe with |p| below the smallest positive sample.
RationalVector choose_ray(const PLMap& f, std::uint64_t seed);
RationalVector choose_probe(const PLMap& f, const ExactRadius& below, std::uint64_t seed);

struct RobustRadius {
  ExactRadius radius;
  std::optional<std::size_t> level;  // last sample where the class is nonzero
  std::string witness;
};

struct ModuleOptions {
  std::uint64_t seed = 0;
  std::optional<RationalVector> probe;
  std::optional<RationalVector> ray;
};

// The pointed module over Z on the samples of a filtration.
struct PointedModule {
  Mode mode = Mode::Signs;
  int n = 1;
  int m = 0;
  std::vector<ExactRadius> samples;
  std::vector<std::shared_ptr<const ClassGroup>> groups;
  std::vector<IntMatrix> transitions;    // transitions[i]: sample i -> sample i + 1
  std::vector<IntVector> distinguished;  // per sample, coordinates
  std::vector<bool> nontrivial;          // per sample, whether the extension class is nonzero
  RobustRadius robust;
  std::optional<RationalVector> probe;
  std::optional<RationalVector> ray;
  std::uint64_t seed = 0;

  std::vector<Integer> orders(std::size_t i) const { return groups.at(i)->orders(); }
};

PointedModule assemble_pointed_module(const Filtration& filtration, Mode mode, const ModuleOptions& options = {});

// Sup of the radii where the extension class is nonzero, 0 when it never is.
RobustRadius robust_radius(const Filtration& filtration, Mode mode, const ModuleOptions& options = {});

// The module over a field: G -> G (x) F on every sample.
struct FieldModule {
  Field field;
  std::vector<ExactRadius> samples;
  std::vector<std::size_t> dims;
  std::vector<FieldMatrix> transitions;
  std::vector<FieldVector> distinguished;
  // When set, the distinguished bar is (0, samples[*robust_level]] instead of the
  // support of the distinguished vector.
  std::optional<std::size_t> robust_level;
  bool robust_override = false;
};

FieldModule tensor(const PointedModule& module, const Field& field);

}  // namespace rzero
