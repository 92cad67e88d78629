#include "rzero/subdivide.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rzero/errors.hpp"
#include "rzero/norm_min.hpp"

namespace rzero {

namespace {

using Carrier = std::map<int, Rational>;

class Workspace {
 public:
  Workspace(const PLMap& f, std::size_t budget) : f_(f), budget_(budget) {
    const Complex& c = *f.complex;
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      ids_.push_back(c.vertex_id(static_cast<int>(v)));
      taken_.insert(ids_.back());
      values_.push_back(f.values[v]);
      carrier_.push_back(Carrier{{static_cast<int>(v), Rational(1)}});
    }
    maximal_ = c.maximal_simplices();
  }

  void run() {
    for (;;) {
      bool changed = argmin_phase();
      changed = zero_phase() || changed;
      if (!changed) return;
    }
  }

  Subdivision finish() const {
    std::vector<std::vector<std::string>> tops;
    for (const auto& s : maximal_) {
      std::vector<std::string> t;
      for (int v : s) t.push_back(ids_[static_cast<std::size_t>(v)]);
      tops.push_back(std::move(t));
    }
    auto complex = std::make_shared<const Complex>(Complex::from_maximal(tops));
    Subdivision out;
    out.map = f_;
    out.map.complex = complex;
    out.map.values.assign(complex->vertex_count(), {});
    out.carrier.assign(complex->vertex_count(), {});
    for (std::size_t w = 0; w < ids_.size(); ++w) {
      auto idx = complex->vertex_index(ids_[w]);
      if (!idx) continue;  // every working vertex lies on some maximal simplex
      out.map.values[static_cast<std::size_t>(*idx)] = values_[w];
      out.carrier[static_cast<std::size_t>(*idx)] = carrier_[w];
    }
    out.starrings = starrings_;
    return out;
  }

 private:
  // All faces of the current maximal simplices, by decreasing dimension then id list.
  std::vector<Simplex> faces_in_order() const {
    std::set<Simplex> all;
    for (const auto& top : maximal_) {
      std::size_t k = top.size();
      for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1UL << i)) face.push_back(top[i]);
        if (face.size() >= 2) all.insert(std::move(face));
      }
    }
    std::vector<std::pair<std::vector<std::string>, Simplex>> keyed;
    for (const auto& s : all) {
      std::vector<std::string> key;
      for (int v : s) key.push_back(ids_[static_cast<std::size_t>(v)]);
      std::sort(key.begin(), key.end());
      keyed.emplace_back(std::move(key), s);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
      return a.first < b.first;
    });
    std::vector<Simplex> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
  }

  bool present(const Simplex& s) const {
    return std::any_of(maximal_.begin(), maximal_.end(),
                       [&](const Simplex& top) { return std::includes(top.begin(), top.end(), s.begin(), s.end()); });
  }

  std::vector<RationalVector> values_of(const Simplex& s) const {
    std::vector<RationalVector> out;
    for (int v : s) out.push_back(values_[static_cast<std::size_t>(v)]);
    return out;
  }

  bool argmin_phase() {
    bool changed = false;
    for (;;) {
      bool round_changed = false;
      for (const auto& s : faces_in_order()) {
        if (good_.count(s) || !present(s)) continue;
        NormMin m = simplex_norm_min(values_of(s), f_.norm);
        if (m.at_vertex) {
          good_.insert(s);
          continue;
        }
        Simplex support;
        RationalVector weights;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (sgn(m.barycentric[i]) != 0) {
            support.push_back(s[i]);
            weights.push_back(m.barycentric[i]);
          }
        star(support, weights);
        round_changed = true;
      }
      if (!round_changed) return changed;
      changed = true;
    }
  }

  bool zero_phase() {
    bool changed = false;
    for (int i = 0; i < f_.n; ++i) {
      auto comp = static_cast<std::size_t>(i);
      for (const auto& s : faces_in_order()) {
        if (s.size() != 2 || !present(s)) continue;
        const Rational& a = values_[static_cast<std::size_t>(s[0])][comp];
        const Rational& b = values_[static_cast<std::size_t>(s[1])][comp];
        if (sgn(a) * sgn(b) >= 0) continue;
        Rational t = a / (a - b);
        star(s, {1 - t, t});
        changed = true;
      }
    }
    return changed;
  }

  int vertex_at(const Simplex& support, const RationalVector& weights) {
    Carrier point;
    for (std::size_t j = 0; j < support.size(); ++j)
      for (const auto& [orig, c] : carrier_[static_cast<std::size_t>(support[j])]) point[orig] += weights[j] * c;
    for (auto it = point.begin(); it != point.end();)
      it = sgn(it->second) == 0 ? point.erase(it) : std::next(it);
    auto found = by_point_.find(point);
    if (found != by_point_.end()) return found->second;

    std::string id = "[";
    for (const auto& [orig, c] : point) {
      if (id.size() > 1) id += ",";
      id += f_.complex->vertex_id(orig) + "=" + format_rational(c);
    }
    id += "]";
    while (!taken_.insert(id).second) id += "'";
    RationalVector value(static_cast<std::size_t>(f_.n), Rational(0));
    for (std::size_t j = 0; j < support.size(); ++j)
      for (std::size_t k = 0; k < value.size(); ++k)
        value[k] += weights[j] * values_[static_cast<std::size_t>(support[j])][k];
    int v = static_cast<int>(ids_.size());
    ids_.push_back(std::move(id));
    values_.push_back(std::move(value));
    carrier_.push_back(point);
    by_point_[std::move(point)] = v;
    return v;
  }

  void star(const Simplex& sigma, const RationalVector& weights) {
    if (++starrings_ > budget_)
      throw InvariantError("star_subdivide: starring budget of " + std::to_string(budget_) +
                           " exceeded (" + std::to_string(ids_.size()) + " vertices so far)");
    int a = vertex_at(sigma, weights);
    std::vector<Simplex> next;
    for (const auto& top : maximal_) {
      if (!std::includes(top.begin(), top.end(), sigma.begin(), sigma.end())) {
        next.push_back(top);
        continue;
      }
      for (int v : sigma) {
        Simplex piece;
        for (int w : top)
          if (w != v) piece.push_back(w);
        piece.push_back(a);
        std::sort(piece.begin(), piece.end());
        next.push_back(std::move(piece));
      }
    }
    maximal_ = std::move(next);
  }

  const PLMap& f_;
  std::size_t budget_;
  std::size_t starrings_ = 0;
  std::vector<std::string> ids_;
  std::set<std::string> taken_;
  std::vector<RationalVector> values_;
  std::vector<Carrier> carrier_;
  std::map<Carrier, int> by_point_;
  std::vector<Simplex> maximal_;
  std::set<Simplex> good_;
};

}  // namespace

Subdivision star_subdivide(const PLMap& f, std::size_t budget) {
  f.validate();
  if (budget == 0) budget = 10 * f.complex->size();
  Workspace w(f, budget);
  w.run();
  return w.finish();
}

RationalVector evaluate_original(const PLMap& f, const std::map<int, Rational>& point) {
  RationalVector y(static_cast<std::size_t>(f.n), Rational(0));
  for (const auto& [v, c] : point)
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += c * f.values[static_cast<std::size_t>(v)][k];
  return y;
}

}  // namespace rzero
