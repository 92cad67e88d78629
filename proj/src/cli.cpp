#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rzero/errors.hpp"
#include "rzero/io.hpp"

namespace rzero {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

PLMap load_map(const std::string& path) {
  try {
    return to_map(input_from_json(read_json(path)));
  } catch (const InputError& e) {
    std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

std::optional<Mode> mode_option(const std::string& name) {
  if (name == "auto") return std::nullopt;
  return parse_mode(name);
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

struct Options {
  std::string input;
  std::string second;
  std::string mode = "auto";
  std::string field = "q";
  std::string delta = "0";
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 200;
  unsigned threads = 1;
};

AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions a;
  a.mode = mode_option(o.mode);
  a.module.seed = o.seed;
  return a;
}

// norm receives the input norm when path holds an input document.
PointedBarcode load_barcode(const std::string& path, const Options& o, std::optional<Norm>& norm) {
  Json j = read_json(path);
  try {
    if (j.is_object() && j.contains("bars")) return barcode_from_json(j).barcode();
    PLMap f = to_map(input_from_json(j));
    norm = f.norm;
    Analysis a = analyze(f, analysis_options(o));
    return analysis_barcode(a, Field::parse(o.field));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "criticals") {
    PLMap f = load_map(o.input);
    Subdivision s = star_subdivide(f);
    CriticalSet c = critical_values(s.map);
    Json crit = Json::array();
    for (const auto& r : c.values) crit.push_back(radius_to_json(r));
    Json samples = Json::array();
    for (const auto& r : sample_radii(c)) samples.push_back(radius_to_json(r));
    Json j;
    j["criticals"] = crit;
    j["has_zero_min"] = c.has_zero_min;
    j["samples"] = samples;
    j["subdivision"] = {{"vertices", s.map.complex->vertex_count()}, {"starrings", s.starrings}};
    emit(out, j);
    return 0;
  }
  if (command == "barcode") {
    Field field = Field::parse(o.field);
    Analysis a = analyze(load_map(o.input), analysis_options(o));
    Json j = to_json(make_barcode_document(a, field));
    j["auto_mode"] = a.auto_mode;
    emit(out, j);
    return 0;
  }
  if (command == "robust-radius") {
    Analysis a = analyze(load_map(o.input), analysis_options(o));
    Json j;
    j["robust_radius"] = radius_to_json(a.module.robust.radius);
    emit(out, j);
    return 0;
  }
  if (command == "module") {
    Analysis a = analyze(load_map(o.input), analysis_options(o));
    std::optional<FieldModule> reduced;
    if (o.field == "z") {
      if (a.module.mode == Mode::Signs) throw ModeError("integer coefficients apply to circle and hopf modes only");
    } else {
      reduced = tensor(a.module, Field::parse(o.field));
    }
    Json j = module_to_json(a.module, reduced);
    j["auto_mode"] = a.auto_mode;
    emit(out, j);
    return 0;
  }
  if (command == "bottleneck") {
    std::optional<Norm> na, nb;
    PointedBarcode a = load_barcode(o.input, o, na);
    PointedBarcode b = load_barcode(o.second, o, nb);
    if (na && nb && *na != *nb) throw InputError("inputs use different norms (" + to_string(*na) + ", " + to_string(*nb) + ")");
    Json j;
    j["distance"] = gap_to_json(bottleneck(a, b));
    emit(out, j);
    return 0;
  }
  if (command == "perturb") {
    PLMap g = perturb(load_map(o.input), {parse_rational(o.delta), o.seed});
    emit(out, to_json(to_document(g)));
    return 0;
  }
  if (command == "check") {
    PLMap f = load_map(o.input);
    Field field = Field::parse(o.field);
    Mode mode = o.mode == "auto" ? select_mode(f.n, f.complex->dimension()) : parse_mode(o.mode);
    Report r = check_invariances(f, mode, field, o.seed);
    Report e = check_exactness(f, o.seed);
    r.checks.insert(r.checks.end(), e.checks.begin(), e.checks.end());
    emit(out, report_to_json(r));
    return r.passed() ? 0 : 3;
  }
  if (command == "fuzz") {
    PLMap f = load_map(o.input);
    Field field = Field::parse(o.field);
    Rational delta = parse_rational(o.delta);
    if (sgn(delta) < 0) throw InputError("--delta must be non-negative");
    Mode mode = o.mode == "auto" ? select_mode(f.n, f.complex->dimension()) : parse_mode(o.mode);
    Report r = check_stability(f, mode, field, delta, o.trials, o.seed, o.threads);
    emit(out, report_to_json(r));
    return r.passed() ? 0 : 3;
  }
  throw InputError("unknown command \"" + command + "\"");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust zero sets of piecewise-linear maps: criticals, pointed barcodes, robust radius"};
  app.name("rzero");
  app.require_subcommand(1, 1);
  Options o;

  auto seed_option = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed")->envname("RZERO_SEED");
  };
  auto mode_flag = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "auto, signs, circle or hopf")->check(CLI::IsMember({"auto", "signs", "circle", "hopf"}));
  };
  auto threads_flag = [&](CLI::App* sub) { sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber); };

  auto* criticals = app.add_subcommand("criticals", "critical values after subdivision");
  criticals->add_option("input", o.input)->required();

  auto* barcode_cmd = app.add_subcommand("barcode", "pointed barcode");
  barcode_cmd->add_option("input", o.input)->required();
  mode_flag(barcode_cmd);
  barcode_cmd->add_option("--field", o.field, "q or f<prime>");
  seed_option(barcode_cmd);

  auto* robust = app.add_subcommand("robust-radius", "robust zero radius");
  robust->add_option("input", o.input)->required();
  mode_flag(robust);
  seed_option(robust);

  auto* module = app.add_subcommand("module", "dump the pointed module");
  module->add_option("input", o.input)->required();
  mode_flag(module);
  module->add_option("--field", o.field, "z, q or f<prime> (default z)");
  seed_option(module);

  auto* bottleneck_cmd = app.add_subcommand("bottleneck", "pointed bottleneck distance");
  bottleneck_cmd->add_option("a", o.input, "barcode or input document")->required();
  bottleneck_cmd->add_option("b", o.second, "barcode or input document")->required();
  mode_flag(bottleneck_cmd);
  bottleneck_cmd->add_option("--field", o.field, "q or f<prime>");
  seed_option(bottleneck_cmd);

  auto* perturb_cmd = app.add_subcommand("perturb", "perturb vertex values");
  perturb_cmd->add_option("input", o.input)->required();
  perturb_cmd->add_option("--delta", o.delta, "bound p/q")->required();
  seed_option(perturb_cmd);

  auto* check = app.add_subcommand("check", "invariance and exactness checks");
  check->add_option("input", o.input)->required();
  mode_flag(check);
  check->add_option("--field", o.field, "q or f<prime>");
  seed_option(check);

  auto* fuzz = app.add_subcommand("fuzz", "stability under random perturbations");
  fuzz->add_option("input", o.input)->required();
  fuzz->add_option("--delta", o.delta, "bound p/q")->required();
  fuzz->add_option("--trials", o.trials, "number of perturbations");
  mode_flag(fuzz);
  fuzz->add_option("--field", o.field, "q or f<prime>");
  seed_option(fuzz);
  threads_flag(fuzz);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "rzero: " << e.what() << "\n";
    return 1;
  }
  std::string command = app.get_subcommands().front()->get_name();
  if (command == "module" && module->count("--field") == 0) o.field = "z";

  try {
    return dispatch(command, o, out);
  } catch (const InputError& e) {
    err << "rzero: input error: " << e.what() << "\n";
    return 1;
  } catch (const ModeError& e) {
    err << "rzero: mode error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "rzero: invariant failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "rzero: internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace rzero
