#include <doctest.h>

#include <algorithm>
#include <functional>

#include "rzero/persistence.hpp"
#include "support.hpp"

using namespace rzero;
using namespace rzero::testing;

namespace {

ExactRadius r(const char* x) { return ExactRadius::rat(q(x)); }
Interval iv(const char* b, const char* d) { return {r(b), r(d)}; }

PointedBarcode bars(std::vector<Interval> xs, std::optional<Interval> dist = std::nullopt) {
  std::vector<Bar> out;
  for (auto& x : xs) out.push_back({x, 1});
  return make_barcode(out, dist);
}

// Cost of matching two intervals, and of leaving one unmatched.
Rational shift(const Interval& a, const Interval& b) {
  Rational db = abs(*a.birth.as_rational() - *b.birth.as_rational());
  Rational dd = abs(*a.death.as_rational() - *b.death.as_rational());
  return std::max(db, dd);
}
Rational half(const Interval& a) { return (*a.death.as_rational() - *a.birth.as_rational()) / 2; }

// Minimum over all partial matchings of the largest cost.
Rational brute_bottleneck(const PointedBarcode& a, const PointedBarcode& b) {
  std::vector<Interval> xs = a.expanded(), ys = b.expanded();
  std::optional<std::size_t> dx, dy;
  if (a.distinguished) dx = std::find(xs.begin(), xs.end(), *a.distinguished) - xs.begin();
  if (b.distinguished) dy = std::find(ys.begin(), ys.end(), *b.distinguished) - ys.begin();
  Rational best = -1;
  std::vector<char> used(ys.size(), 0);
  std::function<void(std::size_t, Rational)> go = [&](std::size_t i, Rational worst) {
    if (best >= 0 && worst >= best) return;
    if (i == xs.size()) {
      for (std::size_t j = 0; j < ys.size(); ++j)
        if (!used[j]) worst = std::max(worst, half(ys[j]));
      if (best < 0 || worst < best) best = worst;
      return;
    }
    go(i + 1, std::max(worst, half(xs[i])));
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j]) continue;
      bool xi = dx == i, yj = dy == j;
      if (xi != yj) continue;
      used[j] = 1;
      go(i + 1, std::max(worst, shift(xs[i], ys[j])));
      used[j] = 0;
    }
  };
  go(0, 0);
  return best;
}

PointedBarcode random_barcode(Rng& rng) {
  std::vector<Interval> xs;
  auto count = rng.integer(0, 3);
  for (long i = 0; i < count; ++i) {
    long b = rng.integer(0, 6), d = b + rng.integer(1, 6);
    xs.push_back({ExactRadius::rat(Rational(b, 2)), ExactRadius::rat(Rational(d, 2))});
  }
  std::optional<Interval> dist;
  if (!xs.empty() && rng.integer(0, 1)) dist = xs[0];
  return bars(xs, dist);
}

Rational gap_value(const RadiusGap& g) {
  auto v = g.to_radius();
  REQUIRE(v);
  return *v->as_rational();
}

}  // namespace

TEST_SUITE("persistence") {
  TEST_CASE("barcodes of the example modules") {
    FieldModule signs{Field::prime(2), {r("1"), r("2")}, {2, 0}, {FieldMatrix(0, 2)}, {{1, 1}, {}}, 0, true};
    PointedBarcode b = barcode(signs);
    CHECK(b.bars == std::vector<Bar>{{iv("0", "1"), 2}});
    CHECK(b.distinguished == iv("0", "1"));

    FieldModule circle{Field::rationals(), {r("1/2"), r("1"), r("2")}, {1, 0, 0}, {FieldMatrix(0, 1), FieldMatrix(0, 0)},
                       {{2}, {}, {}}, std::nullopt, false};
    PointedBarcode c = barcode(circle);
    CHECK(c.bars == std::vector<Bar>{{iv("0", "1/2"), 1}});
    CHECK(c.distinguished == iv("0", "1/2"));

    FieldModule hopf{Field::prime(3), {r("1"), r("2")}, {1, 0}, {FieldMatrix(0, 1)}, {{1}, {}}, std::nullopt, false};
    CHECK(barcode(hopf) == bars({iv("0", "1")}, iv("0", "1")));
  }

  TEST_CASE("hand decomposition of a three-step module") {
    FieldMatrix t0(2, 2), t1(1, 2);
    t0(0, 0) = 1;
    t1(0, 0) = 1;
    FieldModule m{Field::prime(2), {r("1"), r("2"), r("3")}, {2, 2, 1}, {t0, t1}, {{1, 0}, {1, 0}, {1}}, std::nullopt,
                  false};
    // e1 survives to the end, e2 dies at once, the new e2 at the second sample dies next.
    PointedBarcode expected = bars({iv("0", "3"), iv("0", "1"), iv("1", "2")}, iv("0", "3"));
    CHECK(barcode(m) == expected);
    CHECK(decompose_oracle(m) == expected);
  }

  TEST_CASE("zero module has no bars") {
    FieldModule zero{Field::rationals(), {r("1"), r("2")}, {0, 0}, {FieldMatrix(0, 0)}, {{}, {}}, std::nullopt, false};
    CHECK(barcode(zero).bars.empty());
    CHECK_FALSE(barcode(zero).distinguished);
    CHECK(decompose_oracle(zero).bars.empty());
  }

  TEST_CASE("rank formula agrees with the oracle and with dimensions") {
    Rng rng(61);
    for (int trial = 0; trial < 300; ++trial) {
      Field k = std::array{Field::prime(2), Field::prime(5), Field::rationals()}[static_cast<std::size_t>(trial % 3)];
      FieldModule m = random_module(rng, k);
      PointedBarcode fast = barcode(m);
      CHECK(fast == decompose_oracle(m));
      for (std::size_t i = 0; i < m.samples.size(); ++i) {
        std::size_t alive = 0;
        for (const auto& bar : fast.bars)
          if (bar.interval.birth < m.samples[i] && m.samples[i] <= bar.interval.death) alive += bar.multiplicity;
        CHECK(alive == m.dims[i]);
      }
      for (const auto& bar : fast.bars) CHECK(bar.interval.birth < bar.interval.death);
    }
  }

  TEST_CASE("make_barcode requires the distinguished interval") {
    CHECK_THROWS_AS(bars({iv("0", "1")}, iv("0", "2")), InvariantError);
    PointedBarcode merged = make_barcode({{iv("0", "1"), 1}, {iv("0", "1"), 2}}, std::nullopt);
    CHECK(merged.bars == std::vector<Bar>{{iv("0", "1"), 3}});
  }

  TEST_CASE("pointed matchings at fixed delta") {
    PointedBarcode a = bars({iv("0", "1"), iv("1/2", "2")}, iv("0", "1"));
    auto same = feasible_matching(a, a, RadiusGap{});
    REQUIRE(same);
    CHECK(same->pairs.size() == 2);
    CHECK(same->distinguished_matched);

    PointedBarcode lone = bars({iv("0", "1")}, iv("0", "1"));
    PointedBarcode none = bars({});
    CHECK_FALSE(feasible_matching(lone, none, r("1/2")));
    CHECK(feasible_matching(lone, none, r("501/1000")));

    PointedBarcode plain = bars({iv("0", "1")});
    CHECK_FALSE(feasible_matching(lone, plain, r("1/2")));
    auto loose = feasible_matching(lone, plain, r("3/5"));
    REQUIRE(loose);
    CHECK_FALSE(loose->distinguished_matched);
    CHECK(loose->unmatched_first.size() == 1);
  }

  TEST_CASE("bottleneck distances of small barcodes") {
    PointedBarcode a = bars({iv("0", "1")}), b = bars({iv("0", "2")});
    CHECK(bottleneck(a, a) == RadiusGap{});
    CHECK(bottleneck(a, b) == RadiusGap{r("1")});
    CHECK(bottleneck(bars({iv("0", "1")}, iv("0", "1")), bars({iv("0", "1")})) == RadiusGap{r("1/2")});
    PointedBarcode s = make_barcode({{{ExactRadius::zero(), ExactRadius::sqrt_of(2)}, 1}}, std::nullopt);
    PointedBarcode t = bars({iv("0", "1")});
    RadiusGap d = bottleneck(s, t);
    CHECK(d == RadiusGap{ExactRadius::sqrt_of(2), r("1")});
  }

  TEST_CASE("bottleneck agrees with exhaustive matching") {
    Rng rng(62);
    for (int trial = 0; trial < 400; ++trial) {
      PointedBarcode a = random_barcode(rng), b = random_barcode(rng);
      Rational expected = brute_bottleneck(a, b);
      RadiusGap d = bottleneck(a, b);
      CHECK(gap_value(d) == expected);
      CHECK(bottleneck(b, a) == d);
      CHECK(feasible_matching(a, b, RadiusGap{ExactRadius::rat(expected + Rational(1, 1000))}).has_value());
      if (sgn(expected) > 0) CHECK_FALSE(feasible_matching(a, b, RadiusGap{ExactRadius::rat(expected * Rational(999, 1000))}));
    }
  }

  TEST_CASE("bottleneck is a pseudo-metric with monotone feasibility") {
    Rng rng(63);
    for (int trial = 0; trial < 200; ++trial) {
      PointedBarcode a = random_barcode(rng), b = random_barcode(rng), c = random_barcode(rng);
      Rational ab = gap_value(bottleneck(a, b)), bc = gap_value(bottleneck(b, c)), ac = gap_value(bottleneck(a, c));
      CHECK(ac <= ab + bc);
      Rational delta(rng.integer(0, 12), 4);
      if (feasible_matching(a, b, RadiusGap{ExactRadius::rat(delta)}))
        CHECK(feasible_matching(a, b, RadiusGap{ExactRadius::rat(delta + Rational(1, 8))}));
    }
  }
}
