#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rzero/errors.hpp"
#include "rzero/io.hpp"

namespace rzero::testing {

inline std::string data_path(const std::string& name) { return std::string(RZERO_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PLMap data_map(const std::string& name) { return to_map(parse_input(slurp(data_path(name)))); }

inline Rational q(const char* text) { return parse_rational(text); }

inline RationalVector vec(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Map over the closure of the given maximal simplices; vertices take ids in the order given.
inline PLMap make_map(int n, Norm norm, const std::vector<std::vector<std::string>>& simplices,
                      const std::map<std::string, RationalVector>& values) {
  InputDocument doc;
  doc.n = n;
  doc.norm = norm;
  for (const auto& [id, v] : values) doc.vertices.push_back(id);
  doc.simplices = simplices;
  doc.values = values;
  return to_map(doc);
}

inline PLMap edge_map(long a, long b, Norm norm = Norm::Linf) {
  return make_map(1, norm, {{"v0", "v1"}}, {{"v0", vec({a})}, {"v1", vec({b})}});
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine); }
  Rational rational(long range, long max_den) {
    Rational r(integer(-range * max_den, range * max_den), integer(1, max_den));
    r.canonicalize();
    return r;
  }
  // A random point of the closed standard simplex with k vertices.
  RationalVector barycentric(std::size_t k) {
    RationalVector t(k);
    Rational total = 0;
    for (auto& x : t) {
      x = integer(0, 40);
      total += x;
    }
    if (total == 0) {
      t[0] = 1;
      return t;
    }
    for (auto& x : t) x /= total;
    return t;
  }
};

// Random module with a pointed sequence: up to 6 samples, dimensions up to 5.
inline FieldModule random_module(Rng& rng, const Field& k) {
  FieldModule m;
  m.field = k;
  auto s = static_cast<std::size_t>(rng.integer(1, 6));
  for (std::size_t i = 0; i < s; ++i) {
    m.samples.push_back(ExactRadius::rat(Rational(static_cast<long>(i + 1), 2)));
    m.dims.push_back(static_cast<std::size_t>(rng.integer(0, 5)));
  }
  long p = k.is_rationals() ? 3 : static_cast<long>(k.characteristic) - 1;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    FieldMatrix t(m.dims[i + 1], m.dims[i]);
    bool sparse = rng.integer(0, 2) == 0;
    for (std::size_t a = 0; a < t.rows(); ++a)
      for (std::size_t b = 0; b < t.cols(); ++b)
        t(a, b) = k.reduce(Rational(sparse && rng.integer(0, 1) ? 0 : rng.integer(-p, p)));
    m.transitions.push_back(t);
  }
  FieldVector a(m.dims[0]);
  for (auto& x : a) x = k.reduce(Rational(rng.integer(-p, p)));
  m.distinguished.push_back(a);
  for (std::size_t i = 0; i + 1 < s; ++i) m.distinguished.push_back(apply(k, m.transitions[i], m.distinguished[i]));
  return m;
}

}  // namespace rzero::testing
