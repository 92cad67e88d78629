#include "rzero/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rzero/errors.hpp"

namespace rzero {

Complex Complex::from_maximal(const std::vector<std::vector<std::string>>& maximal) {
  if (maximal.empty()) throw InputError("complex has no simplices");
  std::set<std::string> ids;
  for (const auto& s : maximal) {
    if (s.empty()) throw InputError("empty simplex");
    std::set<std::string> seen;
    for (const auto& v : s) {
      if (!seen.insert(v).second) throw InputError("duplicate vertex \"" + v + "\" in a simplex");
      ids.insert(v);
    }
  }
  Complex c;
  c.ids_.assign(ids.begin(), ids.end());
  for (std::size_t i = 0; i < c.ids_.size(); ++i) c.id_index_[c.ids_[i]] = static_cast<int>(i);

  std::set<Simplex> all;
  for (const auto& s : maximal) {
    Simplex top;
    for (const auto& v : s) top.push_back(c.id_index_.at(v));
    std::sort(top.begin(), top.end());
    if (all.count(top)) continue;
    std::size_t k = top.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1UL << i)) face.push_back(top[i]);
      all.insert(std::move(face));
    }
  }
  std::size_t dim = 0;
  for (const auto& s : all) dim = std::max(dim, s.size() - 1);
  c.by_dim_.resize(dim + 1);
  c.index_.resize(dim + 1);
  for (const auto& s : all) c.by_dim_[s.size() - 1].push_back(s);
  for (std::size_t q = 0; q <= dim; ++q) {
    std::sort(c.by_dim_[q].begin(), c.by_dim_[q].end());
    for (std::size_t i = 0; i < c.by_dim_[q].size(); ++i) c.index_[q][c.by_dim_[q][i]] = i;
  }
  return c;
}

std::optional<int> Complex::vertex_index(const std::string& id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Simplex>& Complex::simplices(int q) const {
  static const std::vector<Simplex> none;
  if (q < 0 || q > dimension()) return none;
  return by_dim_[static_cast<std::size_t>(q)];
}

std::size_t Complex::size() const {
  std::size_t s = 0;
  for (const auto& d : by_dim_) s += d.size();
  return s;
}

std::optional<std::size_t> Complex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
  const auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::vector<Simplex> Complex::maximal_simplices() const {
  std::vector<Simplex> out;
  std::set<Simplex> covered;
  for (int q = dimension(); q >= 0; --q)
    for (const auto& s : simplices(q)) {
      if (!covered.count(s)) out.push_back(s);
      if (q > 0)
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex f = s;
          f.erase(f.begin() + static_cast<long>(i));
          covered.insert(f);
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Subcomplex Subcomplex::empty(ComplexPtr parent) {
  return full_subcomplex(parent, [](int) { return false; });
}

Subcomplex Subcomplex::whole(ComplexPtr parent) {
  return full_subcomplex(parent, [](int) { return true; });
}

bool Subcomplex::contains(int q, std::size_t index) const {
  if (q < 0 || static_cast<std::size_t>(q) >= member_.size()) return false;
  return member_[static_cast<std::size_t>(q)].at(index) != 0;
}

bool Subcomplex::contains(const Simplex& s) const {
  auto idx = parent_->index_of(s);
  return idx && contains(static_cast<int>(s.size()) - 1, *idx);
}

std::size_t Subcomplex::count(int q) const {
  if (q < 0 || static_cast<std::size_t>(q) >= member_.size()) return 0;
  const auto& m = member_[static_cast<std::size_t>(q)];
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), 1));
}

std::size_t Subcomplex::size() const {
  std::size_t s = 0;
  for (std::size_t q = 0; q < member_.size(); ++q) s += count(static_cast<int>(q));
  return s;
}

bool Subcomplex::is_subset_of(const Subcomplex& other) const {
  if (parent_ != other.parent_) return false;
  for (std::size_t q = 0; q < member_.size(); ++q)
    for (std::size_t i = 0; i < member_[q].size(); ++i)
      if (member_[q][i] && !other.member_[q][i]) return false;
  return true;
}

int Subcomplex::dimension() const {
  for (std::size_t q = member_.size(); q-- > 0;)
    if (count(static_cast<int>(q)) > 0) return static_cast<int>(q);
  return -1;
}

Subcomplex full_subcomplex(const ComplexPtr& complex, const std::function<bool(int)>& keep) {
  Subcomplex s;
  s.parent_ = complex;
  std::vector<char> keep_vertex(complex->vertex_count());
  for (std::size_t v = 0; v < keep_vertex.size(); ++v) keep_vertex[v] = keep(static_cast<int>(v)) ? 1 : 0;
  s.member_.resize(static_cast<std::size_t>(complex->dimension() + 1));
  for (int q = 0; q <= complex->dimension(); ++q) {
    const auto& simplices = complex->simplices(q);
    auto& m = s.member_[static_cast<std::size_t>(q)];
    m.resize(simplices.size());
    for (std::size_t i = 0; i < simplices.size(); ++i)
      m[i] = std::all_of(simplices[i].begin(), simplices[i].end(),
                         [&](int v) { return keep_vertex[static_cast<std::size_t>(v)] != 0; });
  }
  return s;
}

std::vector<std::vector<int>> connected_components(const Subcomplex& s) {
  const Complex& c = *s.parent();
  std::vector<int> parent(c.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  const auto& edges = c.simplices(1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!s.contains(1, i)) continue;
    int a = find(edges[i][0]), b = find(edges[i][1]);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t v = 0; v < c.vertex_count(); ++v)
    if (s.contains_vertex(static_cast<int>(v))) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

void PLMap::validate() const {
  if (!complex) throw InputError("PL map without a complex");
  if (n < 1) throw InputError("codomain dimension must be at least 1");
  if (values.size() != complex->vertex_count())
    throw InputError("PL map has " + std::to_string(values.size()) + " values for " +
                     std::to_string(complex->vertex_count()) + " vertices");
  for (std::size_t v = 0; v < values.size(); ++v)
    if (values[v].size() != static_cast<std::size_t>(n))
      throw InputError("value of vertex \"" + complex->vertex_id(static_cast<int>(v)) + "\" has " +
                       std::to_string(values[v].size()) + " components, expected " + std::to_string(n));
}

RationalVector PLMap::evaluate(const Simplex& s, const RationalVector& barycentric) const {
  RationalVector y(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += barycentric[i] * values[static_cast<std::size_t>(s[i])][j];
  return y;
}

std::vector<RationalVector> PLMap::simplex_values(const Simplex& s) const {
  std::vector<RationalVector> out;
  out.reserve(s.size());
  for (int v : s) out.push_back(values[static_cast<std::size_t>(v)]);
  return out;
}

PLMap PLMap::scaled(const Rational& c) const {
  PLMap g = *this;
  for (auto& v : g.values)
    for (auto& x : v) x *= c;
  return g;
}

PLMap PLMap::transformed(const std::vector<RationalVector>& linear) const {
  PLMap g = *this;
  g.n = static_cast<int>(linear.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    RationalVector y(linear.size(), Rational(0));
    for (std::size_t i = 0; i < linear.size(); ++i)
      for (std::size_t j = 0; j < values[v].size(); ++j) y[i] += linear[i][j] * values[v][j];
    g.values[v] = std::move(y);
  }
  return g;
}

}  // namespace rzero
