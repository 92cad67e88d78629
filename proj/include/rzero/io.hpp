#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rzero/harness.hpp"

namespace rzero {

using Json = nlohmann::ordered_json;

struct InputDocument {
  int n = 1;
  Norm norm = Norm::Linf;
  std::vector<std::string> vertices;
  std::vector<std::vector<std::string>> simplices;
  std::map<std::string, RationalVector> values;

  bool operator==(const InputDocument&) const = default;
};

// Throws InputError naming the offending field.
InputDocument parse_input(const std::string& text);
InputDocument input_from_json(const Json& j);
Json to_json(const InputDocument& doc);
PLMap to_map(const InputDocument& doc);
InputDocument to_document(const PLMap& f);

struct BarcodeEntry {
  Interval interval;
  std::size_t multiplicity = 1;
  bool distinguished = false;
  bool operator==(const BarcodeEntry&) const = default;
};

struct BarcodeDocument {
  std::string mode;
  std::string field;
  std::vector<ExactRadius> criticals;
  std::vector<BarcodeEntry> bars;
  ExactRadius robust_radius;
  std::uint64_t seed = 0;
  std::optional<RationalVector> probe;
  std::optional<RationalVector> ray;
  bool determinacy = true;

  bool operator==(const BarcodeDocument&) const = default;
  PointedBarcode barcode() const;
};

BarcodeDocument make_barcode_document(const Analysis& a, const Field& field);
BarcodeDocument barcode_from_json(const Json& j);
Json to_json(const BarcodeDocument& doc);

Json radius_to_json(const ExactRadius& r);
ExactRadius radius_from_json(const Json& j);
Json gap_to_json(const RadiusGap& g);
Json report_to_json(const Report& r);
Json module_to_json(const PointedModule& m, const std::optional<FieldModule>& reduced);

// The command line: returns the exit code (0 ok, 1 input, 2 mode, 3 invariant failure).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rzero
