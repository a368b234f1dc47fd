// psifw command-line front end.
#include "psifw/checks.hpp"
#include "psifw/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using namespace psifw;
using io::json;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string base;
  std::optional<int> maxLevel;
  bool oracle = false;
  std::string dotDir;
  unsigned threads = 1;
};

// Raised when a run completes but one of its own assertions is false.
struct AssertionFailure {
  std::string message;
  json context;
};

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PSIFW_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) fail(ErrorKind::Parse, "PSIFW_THREADS must be a positive integer");
    return std::min(hw, static_cast<unsigned>(v));
  }
  return hw;
}

json load_config(const Options& o) {
  if (o.config.empty()) fail(ErrorKind::Parse, "--config is required");
  return io::read_file(o.config);
}

std::optional<Integer> base_override(const Options& o) {
  if (o.base.empty()) return std::nullopt;
  return io::integer_from_json(json(o.base), "--base");
}

void emit(const Options& o, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail(ErrorKind::Parse, "cannot write " + o.out);
  f << text;
}

void write_dot(const Options& o, const std::vector<firework::FireworkLevel>& levels) {
  std::filesystem::create_directories(o.dotDir);
  for (const auto& level : levels)
    for (std::size_t x = 0; x < level.points.size(); ++x) {
      std::string name = "level" + std::to_string(level.r) + "_" + std::to_string(x);
      std::ofstream f(std::filesystem::path(o.dotDir) / (name + ".dot"), std::ios::binary);
      if (!f) fail(ErrorKind::Parse, "cannot write DOT files to " + o.dotDir);
      f << io::to_dot(level.points[x].metric, name);
    }
}

void cmd_firework(const Options& o) {
  io::FireworkConfig cfg = io::firework_config_from_json(load_config(o));
  Integer B = base_override(o).value_or(cfg.B.value_or(kapranov::default_base(cfg.n)));
  auto specs = firework::make_specs(cfg.n, B, cfg.classes);
  io::ReportOptions ro;
  ro.oracle = o.oracle;
  if (auto w = kapranov::base_warning(cfg.n, B)) ro.warnings.push_back(*w);
  auto levels = firework::firework_run(cfg.n, specs, {o.maxLevel, o.threads});
  json report = io::firework_report(cfg.n, specs, levels, ro);
  if (!o.dotDir.empty()) write_dot(o, levels);
  emit(o, report);

  const json& c = report["checks"];
  if (!c["injectivity"].get<bool>() || !c["membership"].get<bool>())
    throw AssertionFailure{"injectivity or membership check failed", c};
  if (c["degreeLaw"]["applicable"].get<bool>() && !c["degreeLaw"]["holds"].get<bool>())
    throw AssertionFailure{"degree law violated", c["degreeLaw"]};
  if (c.contains("oracle"))
    for (const json& x : c["oracle"])
      if (!x["agrees"].get<bool>()) throw AssertionFailure{"oracle disagrees with the firework run", c["oracle"]};
}

std::vector<kapranov::PsiSpec> specs_from(const json& cfg, int n, const Options& o) {
  json list = json::array();
  if (cfg.contains("specs")) list = cfg["specs"];
  else if (cfg.contains("spec")) list.push_back(cfg["spec"]);
  else fail(ErrorKind::Parse, "config needs \"spec\" or \"specs\"");
  if (!list.is_array()) fail(ErrorKind::Parse, "\"specs\" must be an array");
  std::vector<kapranov::PsiSpec> out;
  for (json s : list) {
    if (auto b = base_override(o)) s["B"] = b->str();
    out.push_back(io::spec_from_json(s, n));
  }
  return out;
}

void cmd_kapranov(const Options& o) {
  json cfg = load_config(o);
  if (!cfg.contains("tree")) fail(ErrorKind::Parse, "config needs \"tree\"");
  trees::MetricTree gamma = io::metric_tree_from_json(cfg["tree"]);
  json out = json::array();
  for (const auto& s : specs_from(cfg, gamma.tree().n(), o)) {
    json image = json::array();
    for (const auto& [l, v] : kapranov::kapranov_image(gamma, s)) image.push_back({{"leg", l}, {"value", io::to_json(v)}});
    out.push_back({{"S", io::to_json(s.S)}, {"i", s.i}, {"j", s.j}, {"image", image},
                   {"minProfile", io::min_profile_to_json(kapranov::min_profile(gamma, s), s.q)}});
  }
  emit(o, {{"tree", io::tree_to_json(gamma)}, {"coordinates", out}});
}

void cmd_membership(const Options& o) {
  json cfg = load_config(o);
  if (!cfg.contains("tree")) fail(ErrorKind::Parse, "config needs \"tree\"");
  trees::MetricTree gamma = io::metric_tree_from_json(cfg["tree"]);
  json out = json::array();
  bool all = true;
  for (const auto& s : specs_from(cfg, gamma.tree().n(), o)) {
    bool in = kapranov::in_hypersurface(gamma, s);
    all = all && in;
    out.push_back({{"q", s.q}, {"inHypersurface", in}, {"exactlyTwice", kapranov::achieved_exactly_twice(gamma, s)},
                   {"minProfile", io::min_profile_to_json(kapranov::min_profile(gamma, s), s.q)}});
  }
  emit(o, {{"tree", io::tree_to_json(gamma)}, {"specs", out}, {"inIntersection", all}});
}

std::vector<linalg::IntVector> vectors(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Parse, std::string(what) + " must be an array");
  std::vector<linalg::IntVector> out;
  for (const json& v : j) {
    if (!v.is_array()) fail(ErrorKind::Parse, std::string(what) + " must hold integer vectors");
    linalg::IntVector x;
    for (const json& e : v) x.push_back(io::integer_from_json(e, what));
    out.push_back(x);
  }
  return out;
}

void cmd_mult(const Options& o) {
  json cfg = load_config(o);
  for (const char* k : {"starSigma", "sigma", "starTropX"})
    if (!cfg.contains(k)) fail(ErrorKind::Parse, std::string("config needs \"") + k + "\"");
  trop::WeightedFan starSigma = io::fan_from_json(cfg["starSigma"]);
  trop::WeightedFan starX = io::fan_from_json(cfg["starTropX"]);
  auto sigma = vectors(cfg["sigma"], "sigma");
  std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
  std::optional<std::size_t> facet;
  if (cfg.contains("facet")) facet = cfg["facet"].get<std::size_t>();
  Integer m = trop::local_mult(starSigma, sigma, starX, facet, seed);
  json byFacet = json::array();
  if (!facet)
    for (const auto& f : trop::local_mult_by_facet(starSigma, sigma, starX, seed))
      byFacet.push_back({{"facet", f.facet}, {"value", io::to_json(f.value)}});
  emit(o, {{"multiplicity", io::to_json(m)}, {"byFacet", byFacet}});
}

void cmd_tropcurve(const Options& o) {
  json cfg = load_config(o);
  if (!cfg.contains("curve")) fail(ErrorKind::Parse, "config needs \"curve\"");
  trop::TropCurve2D c = io::curve_from_json(cfg["curve"]);
  json out{{"curve", io::curve_to_json(c)}, {"balanced", trop::check_balanced(c)}};
  if (cfg.contains("rays")) {
    std::vector<trop::Vec2> rays;
    for (const auto& v : vectors(cfg["rays"], "rays")) {
      if (v.size() != 2) fail(ErrorKind::Parse, "rays must be 2-dimensional");
      rays.push_back({v[0], v[1]});
    }
    json crossings = json::array();
    for (const Integer& x : trop::ray_crossings(c, rays)) crossings.push_back(io::to_json(x));
    out["crossings"] = crossings;
  }
  if (cfg.contains("intersect")) {
    trop::TropCurve2D other = io::curve_from_json(cfg["intersect"]);
    std::optional<trop::Point2> shift;
    if (cfg.contains("translation")) {
      const json& t = cfg["translation"];
      if (!t.is_array() || t.size() != 2) fail(ErrorKind::Parse, "translation must be a pair");
      shift = trop::Point2{io::rational_from_json(t[0], "translation"), io::rational_from_json(t[1], "translation")};
    }
    out["stableIntersection"] =
        io::stable_intersection_to_json(trop::stable_intersection_2d(c, other, shift, cfg.value("seed", std::uint64_t{0})));
  }
  emit(o, out);
  if (!out["balanced"].get<bool>()) throw AssertionFailure{"curve is not balanced", json::object()};
}

void cmd_checks(const Options& o) {
  json out = json::array();
  bool all = true;
  for (const auto& r : checks::run_all(o.threads)) {
    all = all && r.passed;
    std::cerr << "criterion " << r.id << (r.passed ? " PASS: " : " FAIL: ") << r.name << "\n";
    out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  emit(o, {{"checks", out}, {"passed", all}});
  if (!all) throw AssertionFailure{"built-in checks failed", out};
}

int failure(const Options& o, const std::string& command, const std::string& kind, const std::string& message,
            int code, const json& context = nullptr) {
  json record{{"status", "failure"}, {"command", command}, {"kind", kind}, {"message", message}, {"exitCode", code}};
  if (!context.is_null()) record["context"] = context;
  std::cerr << record.dump() << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (f) f << record.dump(2) << "\n";
  }
  return code;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Inconsistency:
    case ErrorKind::Ambiguity:
    case ErrorKind::Genericity:
    case ErrorKind::Positioning:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical psi-class intersections on M0,n via the firework algorithm"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "input JSON file");
  app.add_option("--out", o.out, "output JSON file (default stdout)");
  app.add_option("--base", o.base, "override the base B");
  app.add_option("--max-level", o.maxLevel, "stop the firework after this level")->check(CLI::NonNegativeNumber);
  app.add_flag("--oracle", o.oracle, "compare every level with brute-force enumeration");
  app.add_option("--dot", o.dotDir, "write one DOT file per firework point into this directory");

  std::map<std::string, void (*)(const Options&)> commands{
      {"firework", cmd_firework}, {"kapranov", cmd_kapranov},   {"membership", cmd_membership},
      {"mult", cmd_mult},         {"tropcurve", cmd_tropcurve}, {"checks", cmd_checks}};
  std::map<std::string, std::string> help{
      {"firework", "run the firework recursion on a psi-class configuration"},
      {"kapranov", "tropical Kapranov coordinates of a metric tree"},
      {"membership", "test a metric tree against psi-hypersurfaces"},
      {"mult", "local intersection multiplicity at a cone"},
      {"tropcurve", "plane tropical curves, ray crossings and stable intersections"},
      {"checks", "run the built-in example and property suite"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return failure(o, "", "parse", e.what(), 2);
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    o.threads = thread_cap();
    commands.at(command)(o);
  } catch (const AssertionFailure& a) {
    return failure(o, command, "assertion", a.message, 3, a.context);
  } catch (const Error& e) {
    return failure(o, command, error_kind_name(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const json::exception& e) {
    return failure(o, command, "parse", e.what(), 2);
  }
  return 0;
}
