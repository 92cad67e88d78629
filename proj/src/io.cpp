#include "rzero/io.hpp"

#include <set>

#include "rzero/errors.hpp"

namespace rzero {

namespace {

const Json& field_of(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field \"" + key + "\"");
  return *it;
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

Rational rational_of(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": rationals must be strings such as \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

const Json& array_of(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  return j;
}

Json rational_vector(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

std::optional<RationalVector> optional_vector(const Json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  RationalVector v;
  for (std::size_t i = 0; i < array_of(j, path).size(); ++i)
    v.push_back(rational_of(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Json optional_json(const std::optional<RationalVector>& v) { return v ? rational_vector(*v) : Json(nullptr); }

}  // namespace

InputDocument input_from_json(const Json& j) {
  InputDocument doc;
  const Json& n = field_of(j, "n", "document");
  if (!n.is_number_integer() || n.get<long>() < 1) throw InputError("n: expected an integer >= 1");
  doc.n = n.get<int>();
  doc.norm = parse_norm(string_of(field_of(j, "norm", "document"), "norm"));

  const Json& vs = array_of(field_of(j, "vertices", "document"), "vertices");
  std::set<std::string> declared;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string id = string_of(vs[i], "vertices[" + std::to_string(i) + "]");
    if (!declared.insert(id).second) throw InputError("vertices[" + std::to_string(i) + "]: duplicate id \"" + id + "\"");
    doc.vertices.push_back(std::move(id));
  }

  const Json& ss = array_of(field_of(j, "simplices", "document"), "simplices");
  if (ss.empty()) throw InputError("simplices: no simplices given");
  std::set<std::string> used;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::string path = "simplices[" + std::to_string(i) + "]";
    std::vector<std::string> s;
    for (std::size_t k = 0; k < array_of(ss[i], path).size(); ++k) {
      std::string id = string_of(ss[i][k], path + "[" + std::to_string(k) + "]");
      if (!declared.count(id)) throw InputError(path + ": undeclared vertex \"" + id + "\"");
      used.insert(id);
      s.push_back(std::move(id));
    }
    doc.simplices.push_back(std::move(s));
  }
  for (const auto& id : doc.vertices)
    if (!used.count(id)) throw InputError("vertices: \"" + id + "\" lies in no simplex");

  const Json& values = field_of(j, "values", "document");
  if (!values.is_object()) throw InputError("values: expected an object mapping vertex ids to vectors");
  for (const auto& [id, vec] : values.items()) {
    std::string path = "values[\"" + id + "\"]";
    if (!declared.count(id)) throw InputError(path + ": undeclared vertex");
    RationalVector v;
    for (std::size_t k = 0; k < array_of(vec, path).size(); ++k)
      v.push_back(rational_of(vec[k], path + "[" + std::to_string(k) + "]"));
    if (v.size() != static_cast<std::size_t>(doc.n))
      throw InputError(path + ": " + std::to_string(v.size()) + " components, expected n = " + std::to_string(doc.n));
    doc.values[id] = std::move(v);
  }
  for (const auto& id : doc.vertices)
    if (!doc.values.count(id)) throw InputError("values: missing value for vertex \"" + id + "\"");
  return doc;
}

InputDocument parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return input_from_json(j);
}

Json to_json(const InputDocument& doc) {
  Json j;
  j["n"] = doc.n;
  j["norm"] = to_string(doc.norm);
  j["vertices"] = doc.vertices;
  j["simplices"] = doc.simplices;
  Json values = Json::object();
  for (const auto& id : doc.vertices) values[id] = rational_vector(doc.values.at(id));
  j["values"] = values;
  return j;
}

PLMap to_map(const InputDocument& doc) {
  PLMap f;
  f.complex = std::make_shared<const Complex>(Complex::from_maximal(doc.simplices));
  f.n = doc.n;
  f.norm = doc.norm;
  for (const auto& id : f.complex->vertex_ids()) f.values.push_back(doc.values.at(id));
  f.validate();
  return f;
}

InputDocument to_document(const PLMap& f) {
  InputDocument doc;
  doc.n = f.n;
  doc.norm = f.norm;
  const Complex& c = *f.complex;
  doc.vertices = c.vertex_ids();
  for (const auto& s : c.maximal_simplices()) {
    std::vector<std::string> ids;
    for (int v : s) ids.push_back(c.vertex_id(v));
    doc.simplices.push_back(std::move(ids));
  }
  for (std::size_t v = 0; v < c.vertex_count(); ++v) doc.values[c.vertex_id(static_cast<int>(v))] = f.values[v];
  return doc;
}

Json radius_to_json(const ExactRadius& r) {
  Json j;
  j[r.kind() == ExactRadius::Kind::Rat ? "rat" : "sqrt"] = format_rational(r.payload());
  return j;
}

ExactRadius radius_from_json(const Json& j) {
  if (j.is_object() && j.size() == 1) {
    if (j.contains("rat")) {
      Rational q = rational_of(j["rat"], "rat");
      if (sgn(q) < 0) throw InputError("rat: radii are non-negative");
      return ExactRadius::rat(q);
    }
    if (j.contains("sqrt")) {
      Rational q = rational_of(j["sqrt"], "sqrt");
      if (sgn(q) < 0) throw InputError("sqrt: the square must be non-negative");
      return ExactRadius::sqrt_of(q);
    }
  }
  throw InputError("radius: expected {\"rat\": \"p/q\"} or {\"sqrt\": \"p/q\"}");
}

Json gap_to_json(const RadiusGap& g) {
  if (auto r = g.to_radius()) return radius_to_json(*r);
  Json j;
  j["sqrt_diff"] = Json::array({format_rational(abs(g.hi.signed_square())), format_rational(abs(g.lo.signed_square()))});
  return j;
}

PointedBarcode BarcodeDocument::barcode() const {
  std::vector<Bar> list;
  std::optional<Interval> d;
  for (const auto& b : bars) {
    list.push_back({b.interval, b.multiplicity});
    if (b.distinguished) d = b.interval;
  }
  return make_barcode(std::move(list), d);
}

BarcodeDocument make_barcode_document(const Analysis& a, const Field& field) {
  BarcodeDocument doc;
  const PointedModule& m = a.module;
  doc.mode = to_string(m.mode);
  doc.field = field.name();
  doc.criticals = a.filtration.criticals.values;
  PointedBarcode b = barcode(tensor(m, field));
  for (const auto& bar : b.bars)
    doc.bars.push_back({bar.interval, bar.multiplicity, b.distinguished && *b.distinguished == bar.interval});
  doc.robust_radius = m.robust.radius;
  doc.seed = m.seed;
  doc.probe = m.probe;
  doc.ray = m.ray;
  doc.determinacy = determinacy(m.n, m.m);
  return doc;
}

Json to_json(const BarcodeDocument& doc) {
  Json j;
  j["mode"] = doc.mode;
  j["field"] = doc.field;
  Json crit = Json::array();
  for (const auto& c : doc.criticals) crit.push_back(radius_to_json(c));
  j["criticals"] = crit;
  Json bars = Json::array();
  for (const auto& b : doc.bars) {
    Json e;
    e["birth"] = radius_to_json(b.interval.birth);
    e["death"] = radius_to_json(b.interval.death);
    e["multiplicity"] = b.multiplicity;
    e["distinguished"] = b.distinguished;
    bars.push_back(e);
  }
  j["bars"] = bars;
  j["robust_radius"] = radius_to_json(doc.robust_radius);
  j["seeds"] = {{"seed", doc.seed}, {"probe", optional_json(doc.probe)}, {"ray", optional_json(doc.ray)}};
  j["determinacy"] = doc.determinacy;
  return j;
}

BarcodeDocument barcode_from_json(const Json& j) {
  BarcodeDocument doc;
  doc.mode = string_of(field_of(j, "mode", "document"), "mode");
  doc.field = string_of(field_of(j, "field", "document"), "field");
  for (const auto& c : array_of(field_of(j, "criticals", "document"), "criticals")) doc.criticals.push_back(radius_from_json(c));
  const Json& bars = array_of(field_of(j, "bars", "document"), "bars");
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    std::string path = "bars[" + std::to_string(i) + "]";
    BarcodeEntry e;
    e.interval.birth = radius_from_json(field_of(bars[i], "birth", path));
    e.interval.death = radius_from_json(field_of(bars[i], "death", path));
    const Json& mult = field_of(bars[i], "multiplicity", path);
    if (!mult.is_number_unsigned() || mult.get<std::size_t>() == 0)
      throw InputError(path + ".multiplicity: expected a positive integer");
    e.multiplicity = mult.get<std::size_t>();
    const Json& dist = field_of(bars[i], "distinguished", path);
    if (!dist.is_boolean()) throw InputError(path + ".distinguished: expected a boolean");
    e.distinguished = dist.get<bool>();
    if (e.distinguished) ++flagged;
    if (!(e.interval.birth < e.interval.death)) throw InputError(path + ": birth must be below death");
    doc.bars.push_back(e);
  }
  if (flagged > 1) throw InputError("bars: more than one distinguished bar");
  doc.robust_radius = radius_from_json(field_of(j, "robust_radius", "document"));
  const Json& seeds = field_of(j, "seeds", "document");
  const Json& seed = field_of(seeds, "seed", "seeds");
  if (!seed.is_number_unsigned()) throw InputError("seeds.seed: expected an unsigned integer");
  doc.seed = seed.get<std::uint64_t>();
  doc.probe = optional_vector(field_of(seeds, "probe", "seeds"), "seeds.probe");
  doc.ray = optional_vector(field_of(seeds, "ray", "seeds"), "seeds.ray");
  const Json& det = field_of(j, "determinacy", "document");
  if (!det.is_boolean()) throw InputError("determinacy: expected a boolean");
  doc.determinacy = det.get<bool>();
  return doc;
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  Json j;
  j["passed"] = r.passed();
  j["failures"] = r.failures();
  j["checks"] = checks;
  return j;
}

namespace {

Json int_vector(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

}  // namespace

Json module_to_json(const PointedModule& m, const std::optional<FieldModule>& reduced) {
  Json j;
  j["mode"] = to_string(m.mode);
  j["n"] = m.n;
  j["dimension"] = m.m;
  Json samples = Json::array();
  for (const auto& s : m.samples) samples.push_back(radius_to_json(s));
  j["samples"] = samples;
  Json groups = Json::array();
  for (std::size_t i = 0; i < m.groups.size(); ++i) {
    groups.push_back({{"orders", int_vector(m.groups[i]->orders())}, {"distinguished", int_vector(m.distinguished[i])},
                      {"nontrivial", static_cast<bool>(m.nontrivial[i])}});
  }
  j["groups"] = groups;
  Json transitions = Json::array();
  for (const auto& t : m.transitions) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < t.rows(); ++r) rows.push_back(int_vector(t.row(r)));
    transitions.push_back(rows);
  }
  j["transitions"] = transitions;
  j["robust_radius"] = radius_to_json(m.robust.radius);
  j["witness"] = m.robust.witness;
  j["seeds"] = {{"seed", m.seed}, {"probe", optional_json(m.probe)}, {"ray", optional_json(m.ray)}};
  j["determinacy"] = determinacy(m.n, m.m);
  if (reduced) {
    Json fm;
    fm["field"] = reduced->field.name();
    fm["dims"] = reduced->dims;
    Json ts = Json::array();
    for (const auto& t : reduced->transitions) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < t.rows(); ++r) rows.push_back(rational_vector(t.row(r)));
      ts.push_back(rows);
    }
    fm["transitions"] = ts;
    Json ds = Json::array();
    for (const auto& d : reduced->distinguished) ds.push_back(rational_vector(d));
    fm["distinguished"] = ds;
    j["reduced"] = fm;
  }
  return j;
}

}  // namespace rzero
