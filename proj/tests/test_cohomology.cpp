#include <doctest.h>

#include "rzero/classes.hpp"
#include "rzero/cohomology.hpp"
#include "rzero/filtration.hpp"
#include "rzero/subdivide.hpp"
#include "support.hpp"

using namespace rzero;
using namespace rzero::testing;

namespace {

ComplexPtr complex_of(const std::vector<std::vector<std::string>>& tops) {
  return std::make_shared<const Complex>(Complex::from_maximal(tops));
}

ComplexPtr circle(int k) {
  std::vector<std::vector<std::string>> edges;
  for (int i = 0; i < k; ++i) edges.push_back({"p" + std::to_string(i), "p" + std::to_string((i + 1) % k)});
  return complex_of(edges);
}

// Seven-vertex torus.
ComplexPtr torus() {
  std::vector<std::vector<std::string>> tops;
  for (int i = 0; i < 7; ++i) {
    auto id = [](int v) { return "t" + std::to_string(((v % 7) + 7) % 7); };
    tops.push_back({id(i), id(i + 1), id(i + 3)});
    tops.push_back({id(i), id(i + 2), id(i + 3)});
  }
  return complex_of(tops);
}

// Six-vertex projective plane.
ComplexPtr projective_plane() {
  return complex_of({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "2", "6"},
                     {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"}, {"3", "4", "6"}, {"3", "5", "6"}});
}

CohomologyGroup absolute(const ComplexPtr& c, int q) { return CohomologyGroup(CochainPair::absolute(Subcomplex::whole(c)), q); }

// Evaluation of a 1-cochain around the cycle p0 -> p1 -> ... -> p0, sign by edge orientation.
Integer cycle_sum(const Complex& c, const IntVector& z) {
  Integer total = 0;
  int k = static_cast<int>(c.vertex_count());
  for (int i = 0; i < k; ++i) {
    int a = *c.vertex_index("p" + std::to_string(i));
    int b = *c.vertex_index("p" + std::to_string((i + 1) % k));
    Simplex e{std::min(a, b), std::max(a, b)};
    Integer v = z[*c.index_of(e)];
    total += a < b ? v : Integer(-v);
  }
  return total;
}

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("coboundaries square to zero") {
    for (const auto& c : {circle(5), torus(), projective_plane(), complex_of({{"a", "b", "c", "d"}})})
      for (int q = -1; q < c->dimension(); ++q) {
        IntMatrix d0 = coboundary_matrix(*c, q), d1 = coboundary_matrix(*c, q + 1);
        CHECK(d1 * d0 == IntMatrix(d1.rows(), d0.cols()));
      }
    Complex edge = Complex::from_maximal({{"a", "b"}});
    CHECK(coboundary_matrix(edge, 0) == from_rows({{-1, 1}}));
  }

  TEST_CASE("groups of standard spaces") {
    CohomologyGroup h1 = absolute(circle(6), 1);
    CHECK(h1.orders() == std::vector<Integer>{0});

    auto points = complex_of({{"a"}, {"b"}});
    CHECK(field_dimension(CochainPair::absolute(Subcomplex::whole(points)), 0, Field::prime(2)) == 2);

    CHECK(absolute(torus(), 1).orders() == std::vector<Integer>{0, 0});
    CHECK(absolute(torus(), 2).orders() == std::vector<Integer>{0});
    CHECK(absolute(projective_plane(), 1).orders().empty());
    CHECK(absolute(projective_plane(), 2).orders() == std::vector<Integer>{2});
    CHECK(absolute(complex_of({{"a", "b", "c", "d"}}), 2).orders().empty());

    PLMap id = data_map("grid_id.json");
    Subcomplex boundary = superlevel(id, ExactRadius::rat(1));
    CohomologyGroup rel(CochainPair::relative(Subcomplex::whole(id.complex), boundary), 2);
    CHECK(rel.orders() == std::vector<Integer>{0});
  }

  TEST_CASE("field dimensions follow universal coefficients") {
    std::vector<std::pair<ComplexPtr, std::vector<std::size_t>>> known = {
        {projective_plane(), {1, 1, 1}},  // over F2
        {torus(), {1, 2, 1}},
    };
    for (const auto& [c, f2] : known) {
      auto pair = CochainPair::absolute(Subcomplex::whole(c));
      for (int q = 0; q <= 2; ++q) {
        CHECK(field_dimension(pair, q, Field::prime(2)) == f2[static_cast<std::size_t>(q)]);
        CohomologyGroup hq(pair, q), hq1(pair, q + 1);
        for (auto p : {2u, 3u, 5u}) CHECK(field_dimension(pair, q, Field::prime(p)) == predicted_field_dimension(hq, hq1, Field::prime(p)));
      }
    }
    CHECK(field_dimension(CochainPair::absolute(Subcomplex::whole(projective_plane())), 2, Field::prime(3)) == 0);
  }

  TEST_CASE("coordinates pair against the fundamental cycle") {
    auto c = circle(7);
    CohomologyGroup h1 = absolute(c, 1);
    IntVector gen = h1.generator(0);
    Integer unit = cycle_sum(*c, gen);
    CHECK(abs(unit) == 1);
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
      IntVector z(c->count(1));
      for (auto& x : z) x = rng.integer(-5, 5);
      auto coords = h1.coordinates(z);
      REQUIRE(coords);
      CHECK((*coords)[0] * unit == cycle_sum(*c, z));
    }
    IntVector coboundary = coboundary_matrix(*c, 0) * IntVector{1, 2, 3, 4, 5, 6, 7};
    CHECK(h1.coordinates(coboundary) == IntVector{0});
    CHECK_THROWS_AS(h1.coordinates(IntVector(3, 1)), InputError);
    auto t = torus();
    IntVector bad(t->count(1), 0);
    bad[0] = 1;
    CHECK_THROWS_AS(absolute(t, 1).coordinates(bad), InputError);
  }

  TEST_CASE("induced maps") {
    auto c = circle(8);
    Subcomplex whole = Subcomplex::whole(c);
    CohomologyGroup a(CochainPair::absolute(whole), 1);
    CHECK(induced_map(a, a).matrix == IntMatrix::identity(1));
    CohomologyGroup on_points(CochainPair::absolute(full_subcomplex(c, [](int v) { return v % 2 == 0; })), 1);
    InducedMap to_points = induced_map(a, on_points);
    CHECK(to_points.matrix.rows() == 0);
    CHECK(to_points.matrix.cols() == 1);

    PLMap id = data_map("grid_id.json");
    Subcomplex boundary = superlevel(id, ExactRadius::rat(1));
    Subcomplex all = Subcomplex::whole(id.complex);
    CohomologyGroup rel(CochainPair::relative(all, boundary), 2);
    CohomologyGroup abs2(CochainPair::absolute(all), 2);
    CohomologyGroup rel_empty(CochainPair::relative(all, Subcomplex::empty(id.complex)), 2);
    CHECK(induced_map(rel, rel_empty).matrix == induced_map(rel, abs2).matrix);
    CHECK_THROWS(induced_map(abs2, rel));
  }

  TEST_CASE("connecting homomorphism") {
    // vertices sort as [midpoint], v0, v1; edges as (mid, v0), (mid, v1)
    PLMap edge = star_subdivide(edge_map(-1, 1)).map;
    Subcomplex ends = superlevel(edge, ExactRadius::rat(1));
    CochainPair on_a = CochainPair::absolute(ends);
    CHECK(is_zero(connecting_delta(on_a, 0, {0, 0, 0})));
    IntVector lifted_edge = connecting_delta(on_a, 0, {0, 0, 1});
    CHECK(lifted_edge == IntVector{0, 1});
    CohomologyGroup rel1(CochainPair::relative(Subcomplex::whole(edge.complex), ends), 1);
    CHECK(rel1.orders() == std::vector<Integer>{0});
    auto c1 = rel1.coordinates(lifted_edge);
    REQUIRE(c1);
    CHECK(abs((*c1)[0]) == 1);
    CHECK_THROWS_AS(connecting_delta(CochainPair::absolute(Subcomplex::whole(edge.complex)), 0, {0, 0, 1}), InputError);

    PLMap id = data_map("grid_id.json");
    Subcomplex boundary = superlevel(id, ExactRadius::rat(1));
    CohomologyGroup h1(CochainPair::absolute(boundary), 1);
    IntVector lifted = connecting_delta(h1.pair(), 1, h1.generator(0));
    IntVector degree = degree_cocycle(id, boundary, {q("1/7"), q("1/13")});
    Integer degree_total = 0;
    for (const auto& x : degree) degree_total += x;
    CohomologyGroup rel(CochainPair::relative(Subcomplex::whole(id.complex), boundary), 2);
    auto lc = rel.coordinates(lifted);
    auto dc = rel.coordinates(degree);
    REQUIRE(lc);
    REQUIRE(dc);
    CHECK(abs((*lc)[0]) == 1);
    CHECK(abs((*dc)[0]) == 1);
    CHECK(abs(degree_total) == 1);
  }

  TEST_CASE("kernel subgroups") {
    PLMap id = data_map("grid_id.json");
    Subcomplex boundary = superlevel(id, ExactRadius::rat(1));
    Subcomplex all = Subcomplex::whole(id.complex);
    auto rel = std::make_shared<const CohomologyGroup>(CochainPair::relative(all, boundary), 2);
    CohomologyGroup abs2(CochainPair::absolute(all), 2);
    KernelSubgroup ker(rel, abs2, induced_map(*rel, abs2));
    CHECK(ker.orders() == std::vector<Integer>{0});
    auto c = ker.coordinates(degree_cocycle(id, boundary, {q("1/7"), q("1/13")}));
    REQUIRE(c);
    CHECK(abs((*c)[0]) == 1);

    auto circ = circle(5);
    auto h1 = std::make_shared<const CohomologyGroup>(CochainPair::absolute(Subcomplex::whole(circ)), 1);
    KernelSubgroup whole_kernel(h1, *h1, InducedMap{IntMatrix(1, 1)});
    CHECK(whole_kernel.orders() == std::vector<Integer>{0});
    KernelSubgroup none(h1, *h1, InducedMap{IntMatrix::identity(1)});
    CHECK(none.orders().empty());
  }

  TEST_CASE("torsion is preserved by kernels") {
    auto rp2 = projective_plane();
    auto h2 = std::make_shared<const CohomologyGroup>(CochainPair::absolute(Subcomplex::whole(rp2)), 2);
    KernelSubgroup ker(h2, *h2, InducedMap{IntMatrix(1, 1)});
    CHECK(ker.orders() == std::vector<Integer>{2});
    auto c = ker.coordinates(h2->generator(0));
    REQUIRE(c);
    IntVector twice = h2->generator(0);
    for (auto& x : twice) x *= 2;
    CHECK(ker.coordinates(twice) == IntVector{0});
  }

  TEST_CASE("exactness of the long sequence on the grid pair") {
    PLMap id = data_map("grid_id.json");
    Subcomplex boundary = superlevel(id, ExactRadius::rat(1));
    Subcomplex all = Subcomplex::whole(id.complex);
    CohomologyGroup rel(CochainPair::relative(all, boundary), 2);
    CohomologyGroup abs2(CochainPair::absolute(all), 2);
    CohomologyGroup h1(CochainPair::absolute(boundary), 1);
    InducedMap j = induced_map(rel, abs2);
    for (std::size_t g = 0; g < h1.size(); ++g) {
      auto image = rel.coordinates(connecting_delta(h1.pair(), 1, h1.generator(g)));
      REQUIRE(image);
      CHECK(is_zero(j.matrix * *image));
    }
  }
}
