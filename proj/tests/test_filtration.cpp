#include <doctest.h>

#include "rzero/filtration.hpp"
#include "rzero/subdivide.hpp"
#include "support.hpp"

using namespace rzero;
using namespace rzero::testing;

namespace {

Filtration filtration_of(const std::string& name) { return build_filtration(star_subdivide(data_map(name)).map); }

std::vector<ExactRadius> rats(std::initializer_list<const char*> xs) {
  std::vector<ExactRadius> out;
  for (const char* x : xs) out.push_back(ExactRadius::rat(q(x)));
  return out;
}

}  // namespace

TEST_SUITE("filtration") {
  TEST_CASE("critical values of the examples") {
    CriticalSet edge = critical_values(star_subdivide(edge_map(-1, 1)).map);
    CHECK(edge.values == rats({"1"}));
    CHECK(edge.has_zero_min);

    PLMap constant = make_map(2, Norm::L2, {{"a", "b"}}, {{"a", vec({3, 4})}, {"b", vec({3, 4})}});
    CriticalSet c = critical_values(constant);
    REQUIRE(c.values.size() == 1);
    CHECK(c.values[0] == ExactRadius::sqrt_of(25));
    CHECK_FALSE(c.has_zero_min);

    CriticalSet grid = critical_values(data_map("grid_id.json"));
    CHECK(grid.values == rats({"1"}));
    CHECK(grid.has_zero_min);

    CHECK(filtration_of("octagon.json").criticals.values == rats({"1/2", "1"}));
  }

  TEST_CASE("unsubdivided input is rejected") {
    PLMap f = make_map(2, Norm::Linf, {{"a", "b"}}, {{"a", vec({1, 0})}, {"b", vec({0, 1})}});
    CHECK_THROWS_AS(critical_values(f), InvariantError);
  }

  TEST_CASE("sample radii") {
    CHECK(sample_radii({rats({"1"}), true}) == rats({"1", "2"}));
    CHECK(sample_radii({rats({"1/2", "1"}), false}) == rats({"1/2", "1", "2"}));
    CHECK(sample_radii({{}, false}) == rats({"1"}));
    auto irrational = sample_radii({{ExactRadius::sqrt_of(2)}, false});
    REQUIRE(irrational.size() == 2);
    CHECK(irrational[1] > ExactRadius::sqrt_of(2));
  }

  TEST_CASE("levels of the examples") {
    Filtration edge = build_filtration(star_subdivide(edge_map(-1, 1)).map);
    REQUIRE(edge.size() == 2);
    CHECK(edge.levels[0].count(0) == 2);
    CHECK(edge.levels[0].count(1) == 0);
    CHECK(edge.levels[1].is_empty());

    Filtration grid = filtration_of("grid_id.json");
    CHECK(grid.levels[0].count(0) == 8);
    CHECK(grid.levels[0].count(1) == 8);
    CHECK(grid.levels[1].is_empty());

    Filtration octagon = filtration_of("octagon.json");
    REQUIRE(octagon.size() == 3);
    CHECK(octagon.levels[0] == Subcomplex::whole(octagon.complex()));
    CHECK(octagon.levels[1].count(0) == 8);
    CHECK(octagon.levels[1].count(1) == 0);
    CHECK(octagon.levels[2].is_empty());
  }

  TEST_CASE("levels are nested and represent their intervals") {
    Rng rng(31);
    for (const char* name : {"edge.json", "rectangle.json", "grid_id.json", "octagon.json"}) {
      Filtration f = filtration_of(name);
      for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f.levels[i + 1].is_subset_of(f.levels[i]));
      CHECK(f.levels.back().is_empty());
      for (std::size_t i = 0; i < f.criticals.values.size(); ++i) {
        Rational lo = i == 0 ? Rational(0) : f.criticals.values[i - 1].upper_bound();
        Rational hi = f.criticals.values[i].lower_bound();
        for (int trial = 0; trial < 20; ++trial) {
          Rational t(rng.integer(1, 999), 1000);
          Rational r = lo + t * (hi - lo);
          CHECK(superlevel(f.f, ExactRadius::rat(r)) == f.levels[i]);
        }
      }
    }
  }
}
