#include "doctest.h"
#include "fixtures.hpp"

#include "psifw/json_io.hpp"

using namespace psifw;
using io::json;

TEST_CASE("integers are written as decimal strings") {
  Integer big = ipow(Integer(10), 40) + 7;
  CHECK(io::to_json(big) == json("10000000000000000000000000000000000000007"));
  CHECK(io::integer_from_json(io::to_json(big), "x") == big);
  CHECK(io::integer_from_json(json(-12), "x") == -12);
  CHECK_THROWS_AS(io::integer_from_json(json("12a"), "x"), Error);
  CHECK_THROWS_AS(io::integer_from_json(json(1.5), "x"), Error);
  CHECK(io::rational_from_json(json("-3/6"), "x") == Rational(-1, 2));
  CHECK_THROWS_AS(io::rational_from_json(json("1/0"), "x"), Error);
}

TEST_CASE("leg sets") {
  CHECK(io::legset_from_json(json::parse("[3,1]"), "S") == LegSet{1, 3});
  CHECK_THROWS_AS(io::legset_from_json(json::parse("[1,1]"), "S"), Error);
  CHECK_THROWS_AS(io::legset_from_json(json::parse("[0]"), "S"), Error);
  CHECK(io::to_json(LegSet{2, 5}) == json::parse("[2,5]"));
}

TEST_CASE("metric trees round trip") {
  trees::MetricTree m = fixtures::worked_example_final1().metric;
  json j = io::tree_to_json(m);
  CHECK(j["edges"][0]["length"] == json("180"));
  CHECK(io::metric_tree_from_json(j) == m);
  CHECK_THROWS_AS(io::metric_tree_from_json(json::parse(R"({"n":5,"edges":[{"split":[1,2],"length":"0"}]})")), Error);
  CHECK_THROWS_AS(io::metric_tree_from_json(json::parse(R"({"edges":[]})")), Error);
}

TEST_CASE("firework config and report") {
  json cfg = io::parse(R"({"n":6,"B":10,"classes":[{"S":[1,2,3,4,5,6],"i":2,"j":4},
    {"S":[1,3,4,6],"i":3,"j":1},{"S":[1,2,4,5,6],"i":5,"j":4}]})");
  io::FireworkConfig c = io::firework_config_from_json(cfg);
  CHECK(c.n == 6);
  CHECK(*c.B == 10);
  auto specs = firework::make_specs(c.n, *c.B, c.classes);
  CHECK(specs == fixtures::worked_example_specs());

  auto levels = firework::firework_run(6, specs);
  json report = io::firework_report(6, specs, levels, {true, {}});
  CHECK(report["levels"][1]["points"].size() == 7);
  CHECK(report["checks"]["injectivity"] == true);
  CHECK(report["checks"]["membership"] == true);
  CHECK(report["checks"]["degreeLaw"]["applicable"] == false);
  for (const json& o : report["checks"]["oracle"]) CHECK(o["agrees"] == true);
  CHECK(report["cycle"].size() == levels[3].points.size());
  CHECK(report["cycle"][0]["coeff"] == json("1"));
  // deterministic serialization
  CHECK(report.dump() == io::firework_report(6, specs, firework::firework_run(6, specs, {std::nullopt, 3}), {true, {}}).dump());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(io::parse("{"), Error);
  try {
    io::parse("[1,");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
  CHECK_THROWS_AS(io::firework_config_from_json(json::parse(R"({"n":6})")), Error);
  CHECK_THROWS_AS(io::read_file("/nonexistent/config.json"), Error);
}

TEST_CASE("fans and curves") {
  json f = io::parse(R"({"dim":2,"cones":[{"gens":[[1,0]],"weight":1},{"gens":[[0,1]]},{"gens":[[-1,-1]],"weight":"1"}]})");
  trop::WeightedFan fan = io::fan_from_json(f);
  CHECK(fan.cones.size() == 3);
  CHECK(io::fan_from_json(io::fan_to_json(fan)).cones.size() == 3);
  trop::TropCurve2D c = io::curve_from_json(f);
  CHECK(trop::check_balanced(c));

  trop::TropCurve2D line = io::curve_from_json(io::parse(R"({"terms":[{"exp":[1,0]},{"exp":[0,1]},{"exp":[0,0],"val":1}]})"));
  json out = io::curve_to_json(line);
  CHECK(out["vertices"].size() == 1);
  CHECK(out["vertices"][0] == json::parse(R"(["1","1"])"));
  CHECK_THROWS_AS(io::polynomial_from_json(io::parse(R"({"terms":[{"exp":[1]}]})")), Error);
}

TEST_CASE("DOT export") {
  std::string dot = io::to_dot(fixtures::worked_example_final1().metric, "final");
  CHECK(dot.find("graph \"final\"") == 0);
  CHECK(dot.find("label=\"180\"") != std::string::npos);
  CHECK(dot.find("leg6") != std::string::npos);
}
