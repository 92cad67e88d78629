#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "support.hpp"

using namespace rzero;
using namespace rzero::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("rzero_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("input documents") {
    InputDocument edge = parse_input(slurp(data_path("edge.json")));
    CHECK(edge.n == 1);
    CHECK(edge.vertices == std::vector<std::string>{"v0", "v1"});
    CHECK(edge.values.at("v0") == vec({-1}));
    PLMap grid = data_map("grid_id.json");
    CHECK(grid.complex->vertex_count() == 9);
    CHECK(grid.complex->count(2) == 8);
  }

  TEST_CASE("input validation names the offending field") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
      try {
        to_map(parse_input(text));
      } catch (const InputError& e) {
        CAPTURE(e.what());
        return std::string(e.what()).find(needle) != std::string::npos;
      }
      return false;
    };
    CHECK(fails_with(R"({"n":1,"norm":"linf","vertices":["a"],"simplices":[["a","zz"]],"values":{"a":["1"]}})", "zz"));
    CHECK(fails_with(R"({"n":1,"norm":"l7","vertices":["a"],"simplices":[["a"]],"values":{"a":["1"]}})", "norm"));
    CHECK(fails_with(R"({"n":1,"norm":"linf","vertices":["a"],"simplices":[["a"]],"values":{"a":[1]}})", "values"));
    CHECK(fails_with(R"({"n":2,"norm":"linf","vertices":["a"],"simplices":[["a"]],"values":{"a":["1"]}})", "a"));
    CHECK(fails_with(R"({"n":1,"norm":"linf","vertices":["a"],"simplices":[["a"]],"values":{}})", "a"));
    CHECK(fails_with("{", "JSON"));
  }

  TEST_CASE("documents round-trip") {
    for (const char* name : {"edge.json", "rectangle.json", "grid_id.json", "grid_negid.json", "octagon.json"}) {
      InputDocument doc = parse_input(slurp(data_path(name)));
      CHECK(input_from_json(to_json(doc)) == doc);
      InputDocument canonical = to_document(to_map(doc));
      CHECK(to_document(to_map(canonical)) == canonical);
      CHECK(canonical.values == doc.values);
      CHECK(to_map(canonical).complex->size() == to_map(doc).complex->size());
      for (const char* field : {"q", "f2"}) {
        Analysis a = analyze(to_map(doc));
        BarcodeDocument b = make_barcode_document(a, Field::parse(field));
        BarcodeDocument back = barcode_from_json(Json::parse(to_json(b).dump()));
        CHECK(back == b);
        CHECK(back.barcode() == analysis_barcode(a, Field::parse(field)));
        int flagged = 0;
        for (const auto& e : b.bars) flagged += e.distinguished;
        CHECK(flagged <= 1);
      }
    }
    for (const ExactRadius& r : {ExactRadius::rat(q("3/4")), ExactRadius::sqrt_of(2), ExactRadius::zero()})
      CHECK(radius_from_json(radius_to_json(r)) == r);
    CHECK(radius_to_json(ExactRadius::sqrt_of(2)).dump() == R"({"sqrt":"2"})");
  }

  TEST_CASE("commands on the examples") {
    Run rr = run({"robust-radius", data_path("edge.json")});
    CHECK(rr.code == 0);
    CHECK(rr.out == "{\"robust_radius\":{\"rat\":\"1\"}}\n");

    Run bc = run({"barcode", data_path("grid_id.json"), "--mode", "hopf", "--field", "f2"});
    CHECK(bc.code == 0);
    Json j = Json::parse(bc.out);
    REQUIRE(j["bars"].size() == 1);
    CHECK(j["bars"][0]["distinguished"] == true);
    CHECK(j["bars"][0]["birth"] == Json::parse(R"({"rat":"0"})"));
    CHECK(j["bars"][0]["death"] == Json::parse(R"({"rat":"1"})"));

    std::string a = data_path("edge.json");
    Run same = run({"bottleneck", a, a});
    CHECK(same.code == 0);
    CHECK(same.out == "{\"distance\":{\"rat\":\"0\"}}\n");

    std::string saved = temp_file("edge_bars.json", run({"barcode", a}).out);
    CHECK(run({"bottleneck", saved, a}).out == "{\"distance\":{\"rat\":\"0\"}}\n");
    std::string l1 = temp_file("edge_l1.json", R"({"n":1,"norm":"l1","vertices":["v0","v1"],"simplices":[["v0","v1"]],)"
                                                R"("values":{"v0":["-1"],"v1":["1"]}})");
    Run mixed = run({"bottleneck", a, l1});
    CHECK(mixed.code == 1);
    CHECK(mixed.err.find("norms") != std::string::npos);

    Run crit = run({"criticals", data_path("octagon.json")});
    CHECK(Json::parse(crit.out)["criticals"] == Json::parse(R"([{"rat":"1/2"},{"rat":"1"}])"));

    Run module = run({"module", data_path("octagon.json"), "--mode", "circle"});
    CHECK(module.code == 0);
    CHECK(Json::parse(module.out)["groups"][0]["orders"] == Json::parse(R"(["0"])"));
  }

  TEST_CASE("output is byte-stable") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"barcode", data_path("grid_id.json")},
             {"module", data_path("octagon.json"), "--mode", "circle", "--field", "f3"},
             {"perturb", data_path("rectangle.json"), "--delta", "1/3", "--seed", "5"},
         }) {
      Run a = run(args), b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("perturb output is a valid nearby document") {
    Run p = run({"perturb", data_path("grid_id.json"), "--delta", "1/4", "--seed", "3"});
    REQUIRE(p.code == 0);
    PLMap g = to_map(parse_input(p.out));
    PLMap f = data_map("grid_id.json");
    for (std::size_t v = 0; v < f.values.size(); ++v)
      for (std::size_t k = 0; k < 2; ++k) CHECK(abs(g.values[v][k] - f.values[v][k]) <= q("1/4"));
  }

  TEST_CASE("exit codes") {
    CHECK(run({"barcode", data_path("missing.json")}).code == 1);
    CHECK(run({"barcode"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({"barcode", data_path("edge.json"), "--mode", "circle"}).code == 2);
    CHECK(run({"module", data_path("edge.json")}).code == 2);
    CHECK(run({"--help"}).code == 0);
    std::string wide = temp_file("wide.json",
                                 R"({"n":3,"norm":"linf","vertices":["a","b","c","d","e","f"],)"
                                 R"("simplices":[["a","b","c","d","e","f"]],)"
                                 R"("values":{"a":["1","0","0"],"b":["0","1","0"],"c":["0","0","1"],)"
                                 R"("d":["-1","0","0"],"e":["0","-1","0"],"f":["0","0","-1"]}})");
    Run mode = run({"barcode", wide});
    CHECK(mode.code == 2);
    CHECK(mode.err.find("mode") != std::string::npos);
  }

  TEST_CASE("seed from the environment") {
    ::setenv("RZERO_SEED", "77", 1);
    Json j = Json::parse(run({"barcode", data_path("grid_id.json")}).out);
    ::unsetenv("RZERO_SEED");
    CHECK(j["seeds"]["seed"] == 77);
    Json k = Json::parse(run({"barcode", data_path("grid_id.json"), "--seed", "78"}).out);
    CHECK(k["seeds"]["seed"] == 78);
  }

  TEST_CASE("check and fuzz commands") {
    Run check = run({"check", data_path("edge.json")});
    CHECK(check.code == 0);
    CHECK(Json::parse(check.out)["passed"] == true);
    Run fuzz = run({"fuzz", data_path("octagon.json"), "--mode", "circle", "--delta", "1/10", "--trials", "10", "--threads", "2"});
    CHECK(fuzz.code == 0);
    CHECK(Json::parse(fuzz.out)["checks"].size() == 10);
  }
}
