#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rzero/norm_min.hpp"
#include "rzero/radius.hpp"

namespace rzero {

// Sorted vertex indices.
using Simplex = std::vector<int>;

// A finite abstract simplicial complex. Vertices are ordered lexicographically by id and
// that order fixes every orientation sign; simplices of each dimension are stored in
// lexicographic order of their vertex-index tuples.
class Complex {
 public:
  // Closure of the given maximal simplices. Throws InputError on empty input, empty
  // simplices or repeated vertices within a simplex.
  static Complex from_maximal(const std::vector<std::vector<std::string>>& maximal);

  std::size_t vertex_count() const { return ids_.size(); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::string& vertex_id(int v) const { return ids_.at(static_cast<std::size_t>(v)); }
  std::optional<int> vertex_index(const std::string& id) const;

  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  const std::vector<Simplex>& simplices(int q) const;
  std::size_t count(int q) const { return simplices(q).size(); }
  std::size_t size() const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  // Maximal simplices, lexicographic.
  std::vector<Simplex> maximal_simplices() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> id_index_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

using ComplexPtr = std::shared_ptr<const Complex>;

// A face-closed subset of a parent complex.
class Subcomplex {
 public:
  Subcomplex() = default;
  static Subcomplex empty(ComplexPtr parent);
  static Subcomplex whole(ComplexPtr parent);

  const ComplexPtr& parent() const { return parent_; }
  bool contains(int q, std::size_t index) const;
  bool contains(const Simplex& s) const;
  bool contains_vertex(int v) const { return contains(0, static_cast<std::size_t>(v)); }
  std::size_t count(int q) const;
  std::size_t size() const;
  bool is_empty() const { return size() == 0; }
  bool is_subset_of(const Subcomplex& other) const;
  int dimension() const;

  bool operator==(const Subcomplex& o) const { return parent_ == o.parent_ && member_ == o.member_; }

 private:
  friend Subcomplex full_subcomplex(const ComplexPtr&, const std::function<bool(int)>&);
  ComplexPtr parent_;
  std::vector<std::vector<char>> member_;
};

// All simplices whose vertices all satisfy keep.
Subcomplex full_subcomplex(const ComplexPtr& complex, const std::function<bool(int)>& keep);

// Vertex partition of S into connected components, each sorted, ordered by minimal vertex.
std::vector<std::vector<int>> connected_components(const Subcomplex& s);

// A simplexwise-linear map into Q^n given by its vertex values.
struct PLMap {
  ComplexPtr complex;
  std::vector<RationalVector> values;  // indexed by vertex
  int n = 1;
  Norm norm = Norm::Linf;

  // Checks value count and dimensions; throws InputError.
  void validate() const;
  ExactRadius vertex_norm(int v) const { return vector_norm(values.at(static_cast<std::size_t>(v)), norm); }
  RationalVector evaluate(const Simplex& s, const RationalVector& barycentric) const;
  std::vector<RationalVector> simplex_values(const Simplex& s) const;
  int domain_dimension() const { return complex->dimension(); }

  // Same complex, values transformed.
  PLMap scaled(const Rational& c) const;
  PLMap negated() const { return scaled(-1); }
  PLMap transformed(const std::vector<RationalVector>& linear) const;  // values -> L * values
};

}  // namespace rzero
