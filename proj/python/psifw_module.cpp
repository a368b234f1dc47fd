// Python bindings. Structured values cross the boundary as JSON text.
#include "psifw/checks.hpp"
#include "psifw/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace psifw;
using io::json;

namespace {

std::string run_firework(const std::string& config, std::optional<std::string> base, std::optional<int> maxLevel,
                     unsigned threads, bool oracle) {
  io::FireworkConfig cfg = io::firework_config_from_json(io::parse(config));
  Integer B = base ? io::integer_from_json(json(*base), "base") : cfg.B.value_or(kapranov::default_base(cfg.n));
  auto specs = firework::make_specs(cfg.n, B, cfg.classes);
  io::ReportOptions ro;
  ro.oracle = oracle;
  if (auto w = kapranov::base_warning(cfg.n, B)) ro.warnings.push_back(*w);
  std::vector<firework::FireworkLevel> levels;
  {
    py::gil_scoped_release release;
    levels = firework::firework_run(cfg.n, specs, {maxLevel, std::max(1u, threads)});
  }
  return io::firework_report(cfg.n, specs, levels, ro).dump();
}

std::string min_profile(const std::string& tree, const std::string& spec) {
  trees::MetricTree g = io::metric_tree_from_json(io::parse(tree));
  kapranov::PsiSpec s = io::spec_from_json(io::parse(spec), g.tree().n());
  json image = json::array();
  for (const auto& [l, v] : kapranov::kapranov_image(g, s)) image.push_back({{"leg", l}, {"value", io::to_json(v)}});
  return json{{"image", image},
              {"minProfile", io::min_profile_to_json(kapranov::min_profile(g, s), s.q)},
              {"inHypersurface", kapranov::in_hypersurface(g, s)},
              {"exactlyTwice", kapranov::achieved_exactly_twice(g, s)}}
      .dump();
}

std::string trop_curve(const std::string& curve) {
  trop::TropCurve2D c = io::curve_from_json(io::parse(curve));
  return json{{"curve", io::curve_to_json(c)}, {"balanced", trop::check_balanced(c)}}.dump();
}

std::vector<std::string> ray_crossings(const std::string& curve, const std::vector<std::pair<long long, long long>>& rays) {
  std::vector<trop::Vec2> rs;
  for (auto [x, y] : rays) rs.push_back({x, y});
  std::vector<std::string> out;
  for (const Integer& v : trop::ray_crossings(io::curve_from_json(io::parse(curve)), rs)) out.push_back(v.str());
  return out;
}

std::string stable_intersection(const std::string& a, const std::string& b,
                                std::optional<std::pair<std::string, std::string>> translation, std::uint64_t seed) {
  std::optional<trop::Point2> t;
  if (translation)
    t = trop::Point2{io::rational_from_json(json(translation->first), "translation"),
                     io::rational_from_json(json(translation->second), "translation")};
  auto s = trop::stable_intersection_2d(io::curve_from_json(io::parse(a)), io::curve_from_json(io::parse(b)), t, seed);
  return io::stable_intersection_to_json(s).dump();
}

std::string local_mult(const std::string& starSigma, const std::vector<std::vector<long long>>& sigma,
                       const std::string& starTropX, std::optional<std::size_t> facet, std::uint64_t seed) {
  std::vector<linalg::IntVector> gens;
  for (const auto& v : sigma) gens.emplace_back(v.begin(), v.end());
  return trop::local_mult(io::fan_from_json(io::parse(starSigma)), gens, io::fan_from_json(io::parse(starTropX)), facet, seed)
      .str();
}

std::optional<std::string> lattice_index(const std::vector<std::vector<long long>>& sub, std::size_t ambientRank) {
  std::vector<linalg::IntVector> rows;
  for (const auto& v : sub) rows.emplace_back(v.begin(), v.end());
  auto idx = linalg::lattice_index(linalg::Lattice::standard(ambientRank), linalg::Lattice::spanned_by(rows, ambientRank));
  if (idx.infinite()) return std::nullopt;
  return idx.value->str();
}

std::string run_checks(unsigned threads) {
  json out = json::array();
  std::vector<checks::CheckResult> results;
  {
    py::gil_scoped_release release;
    results = checks::run_all(std::max(1u, threads));
  }
  for (const auto& r : results)
    out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_psifw, m) {
  m.doc() = "Tropical psi-class intersections on M0,n";
  // args are (kind, message)
  static py::exception<Error> exc(m, "PsifwError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(exc.ptr(), py::make_tuple(error_kind_name(e.kind()), e.what()).ptr());
    }
  });

  m.def("firework", &run_firework, py::arg("config"), py::arg("base") = py::none(), py::arg("max_level") = py::none(),
        py::arg("threads") = 1, py::arg("oracle") = false);
  m.def("min_profile", &min_profile, py::arg("tree"), py::arg("spec"));
  m.def("trop_curve", &trop_curve, py::arg("curve"));
  m.def("ray_crossings", &ray_crossings, py::arg("curve"), py::arg("rays"));
  m.def("stable_intersection", &stable_intersection, py::arg("a"), py::arg("b"), py::arg("translation") = py::none(),
        py::arg("seed") = 0);
  m.def("local_mult", &local_mult, py::arg("star_sigma"), py::arg("sigma"), py::arg("star_tropx"),
        py::arg("facet") = py::none(), py::arg("seed") = 0);
  m.def("lattice_index", &lattice_index, py::arg("sub"), py::arg("ambient_rank"));
  m.def("run_checks", &run_checks, py::arg("threads") = 1);
}
