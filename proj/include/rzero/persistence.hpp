#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rzero/classes.hpp"

namespace rzero {

// The half-open interval (birth, death].
struct Interval {
  ExactRadius birth;
  ExactRadius death;

  RadiusGap length() const { return {death, birth}; }
  bool operator==(const Interval& o) const { return birth == o.birth && death == o.death; }
  std::strong_ordering operator<=>(const Interval& o) const {
    if (auto c = birth <=> o.birth; c != 0) return c;
    return death <=> o.death;
  }
};

struct Bar {
  Interval interval;
  std::size_t multiplicity = 1;
  bool operator==(const Bar&) const = default;
};

struct PointedBarcode {
  std::vector<Bar> bars;  // sorted by interval, distinct intervals
  std::optional<Interval> distinguished;

  std::size_t total() const;
  // Intervals with multiplicity, sorted.
  std::vector<Interval> expanded() const;
  bool operator==(const PointedBarcode&) const = default;
};

// Sorts and merges equal intervals; throws InvariantError when the distinguished
// interval is not among the bars.
PointedBarcode make_barcode(std::vector<Bar> bars, std::optional<Interval> distinguished);

// Bars by inclusion-exclusion over ranks of composite transitions; the bar covering
// samples i..j is (r_{i-1}, r_j] with r_{-1} = 0.
PointedBarcode barcode(const FieldModule& module);

// Interval decomposition by explicit basis completion, with the distinguished summand
// split off; independent of the rank formula. Total dimension at most 64.
PointedBarcode decompose_oracle(const FieldModule& module);

struct Matching {
  std::vector<std::pair<Interval, Interval>> pairs;
  std::vector<Interval> unmatched_first;
  std::vector<Interval> unmatched_second;
  bool distinguished_matched = false;
};

// Pointed matching within delta: shifts of at most delta, intervals left unmatched only
// when shorter than 2 delta, distinguished intervals matched only to each other.
std::optional<Matching> feasible_matching(const PointedBarcode& a, const PointedBarcode& b, const RadiusGap& delta);

// The infimum of feasible delta. It is one of 0, the endpoint differences and the
// half-lengths; matchings exist for every larger delta.
RadiusGap bottleneck(const PointedBarcode& a, const PointedBarcode& b);

}  // namespace rzero
