#include "psifw/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace psifw::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int int_from_json(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

std::vector<linalg::IntVector> vectors_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of integer vectors");
  std::vector<linalg::IntVector> out;
  for (const json& v : j) {
    if (!v.is_array()) bad(what + " must be an array of integer vectors");
    linalg::IntVector x;
    for (const json& e : v) x.push_back(integer_from_json(e, what));
    out.push_back(std::move(x));
  }
  return out;
}

json vector_to_json(const linalg::IntVector& v) {
  json out = json::array();
  for (const Integer& x : v) out.push_back(x.str());
  return out;
}

}  // namespace

Integer integer_from_json(const json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
        bad(what + ": \"" + s + "\" is not an integer");
      return Integer(s);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
  }
  bad(what + " must be an integer or a decimal string");
}

Rational rational_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(integer_from_json(json(s), what));
    Integer num = integer_from_json(json(s.substr(0, slash)), what);
    Integer den = integer_from_json(json(s.substr(slash + 1)), what);
    if (den == 0) bad(what + ": zero denominator");
    return Rational(num, den);
  }
  return Rational(integer_from_json(j, what));
}

json to_json(const Integer& x) { return x.str(); }

json to_json(const Rational& x) { return to_decimal(x); }

json to_json(LegSet s) {
  json out = json::array();
  for (int l : s.elements()) out.push_back(l);
  return out;
}

LegSet legset_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of leg labels");
  std::vector<int> legs;
  for (const json& x : j) {
    int l = int_from_json(x, what);
    if (l < 1 || l > kMaxLegs) bad(what + ": leg label out of range");
    legs.push_back(l);
  }
  LegSet s;
  for (int l : legs) {
    if (s.contains(l)) bad(what + ": repeated leg " + std::to_string(l));
    s.insert(l);
  }
  return s;
}

json tree_to_json(const trees::MarkedTree& t) {
  json out;
  out["n"] = t.n();
  if (t.legs() != LegSet::range(t.n())) out["legs"] = to_json(t.legs());
  json splits = json::array();
  for (LegSet s : t.splits()) splits.push_back(to_json(s));
  out["splits"] = splits;
  return out;
}

json tree_to_json(const trees::MetricTree& m) {
  const trees::MarkedTree& t = m.tree();
  json out;
  out["n"] = t.n();
  if (t.legs() != LegSet::range(t.n())) out["legs"] = to_json(t.legs());
  json edges = json::array();
  for (int e = 0; e < t.edge_count(); ++e)
    edges.push_back({{"split", to_json(t.split(e))}, {"length", to_json(m.length(e))}});
  out["edges"] = edges;
  return out;
}

trees::MetricTree metric_tree_from_json(const json& j) {
  int n = int_from_json(field(j, "n", "tree"), "tree.n");
  LegSet legs = j.contains("legs") ? legset_from_json(j.at("legs"), "tree.legs") : LegSet::range(n);
  if (legs.size() != n) bad("tree.legs must have n entries");
  std::vector<std::pair<LegSet, Integer>> edges;
  const json& es = field(j, "edges", "tree");
  if (!es.is_array()) bad("tree.edges must be an array");
  for (const json& e : es)
    edges.push_back({legset_from_json(field(e, "split", "tree edge"), "edge split"),
                     integer_from_json(field(e, "length", "tree edge"), "edge length")});
  return trees::MetricTree::from_split_lengths(legs, std::move(edges));
}

FireworkConfig firework_config_from_json(const json& j) {
  FireworkConfig c;
  c.n = int_from_json(field(j, "n", "config"), "n");
  if (j.contains("B")) c.B = integer_from_json(j.at("B"), "B");
  const json& cls = field(j, "classes", "config");
  if (!cls.is_array()) bad("classes must be an array");
  for (const json& x : cls)
    c.classes.push_back({legset_from_json(field(x, "S", "class"), "class S"), int_from_json(field(x, "i", "class"), "class i"),
                         int_from_json(field(x, "j", "class"), "class j")});
  return c;
}

kapranov::PsiSpec spec_from_json(const json& j, int n) {
  kapranov::PsiSpec s;
  s.n = j.contains("n") ? int_from_json(j.at("n"), "spec.n") : n;
  s.S = j.contains("S") ? legset_from_json(j.at("S"), "spec.S") : LegSet::range(s.n);
  s.i = int_from_json(field(j, "i", "spec"), "spec.i");
  s.j = int_from_json(field(j, "j", "spec"), "spec.j");
  s.q = j.contains("q") ? int_from_json(j.at("q"), "spec.q") : 1;
  s.B = j.contains("B") ? integer_from_json(j.at("B"), "spec.B") : kapranov::default_base(s.n);
  kapranov::validate(s);
  return s;
}

json min_profile_to_json(const kapranov::MinProfile& p, int q) {
  json values = json::array();
  for (const auto& [l, v] : p.values) values.push_back({{"leg", l}, {"value", to_json(v)}});
  return {{"q", q}, {"values", values}, {"argmins", p.argmins}};
}

json cycle_to_json(const firework::Cycle& c) {
  json out = json::array();
  for (const auto& [t, coeff] : c.strata) {
    json splits = json::array();
    for (LegSet s : t.splits()) splits.push_back(to_json(s));
    out.push_back({{"splits", splits}, {"coeff", to_json(coeff)}});
  }
  return out;
}

json firework_report(int n, std::span<const kapranov::PsiSpec> specs, const std::vector<firework::FireworkLevel>& levels,
                     const ReportOptions& options) {
  json out;
  out["n"] = n;
  out["B"] = specs.empty() ? to_json(kapranov::default_base(n)) : to_json(specs.front().B);
  json jl = json::array();
  bool membership = true;
  for (const firework::FireworkLevel& level : levels) {
    json points = json::array();
    for (const firework::FireworkPoint& p : level.points) {
      json profiles = json::array();
      for (int q = 0; q < level.r; ++q) {
        kapranov::MinProfile prof = kapranov::min_profile(p.metric, specs[static_cast<std::size_t>(q)]);
        membership = membership && prof.argmins.size() == 2;
        profiles.push_back(min_profile_to_json(prof, q + 1));
      }
      json order = json::array();
      for (LegSet s : p.tuple.edgeOrder) order.push_back(to_json(s));
      points.push_back({{"tree", tree_to_json(p.metric)}, {"edgeOrder", order}, {"k", p.tuple.k}, {"l", p.tuple.l},
                        {"minProfiles", profiles}});
    }
    jl.push_back({{"r", level.r}, {"points", points}});
  }
  out["levels"] = jl;
  out["cycle"] = cycle_to_json(firework::limit_cycle(levels.back()));

  json checks;
  bool injective = true;
  for (const auto& level : levels)
    for (std::size_t x = 1; x < level.points.size(); ++x)
      if (level.points[x - 1].metric.tree() == level.points[x].metric.tree()) injective = false;
  checks["injectivity"] = injective;
  checks["membership"] = membership;

  // degree law applies when every class uses S = [n] and all n-3 levels ran
  json law;
  bool applicable = static_cast<int>(specs.size()) == n - 3 && static_cast<int>(levels.size()) == n - 2;
  for (const auto& s : specs) applicable = applicable && s.S == LegSet::range(n);
  law["applicable"] = applicable;
  if (applicable) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    for (const auto& s : specs) ++a[static_cast<std::size_t>(s.i - 1)];
    Integer expected = firework::multinomial(n - 3, a);
    law["exponents"] = a;
    law["expected"] = to_json(expected);
    law["actual"] = std::to_string(levels.back().points.size());
    law["holds"] = expected == Integer(levels.back().points.size());
  }
  checks["degreeLaw"] = law;

  if (options.oracle) {
    json oracle = json::array();
    for (const auto& level : levels) {
      if (n > 7 || level.r > 3) break;
      std::vector<trees::MetricTree> bf = firework::brute_force_fw(n, specs, level.r);
      bool same = bf.size() == level.points.size();
      for (std::size_t x = 0; same && x < bf.size(); ++x) same = bf[x] == level.points[x].metric;
      oracle.push_back({{"r", level.r}, {"oracleCount", bf.size()}, {"agrees", same}});
    }
    checks["oracle"] = oracle;
  }
  out["checks"] = checks;
  out["warnings"] = options.warnings;
  return out;
}

trop::WeightedFan fan_from_json(const json& j) {
  trop::WeightedFan f;
  f.dim = int_from_json(field(j, "dim", "fan"), "fan.dim");
  if (j.contains("lineality")) f.lineality = vectors_from_json(j.at("lineality"), "fan.lineality");
  const json& cones = field(j, "cones", "fan");
  if (!cones.is_array()) bad("fan.cones must be an array");
  for (const json& c : cones) {
    trop::FanCone cone;
    cone.gens = vectors_from_json(field(c, "gens", "cone"), "cone.gens");
    cone.weight = c.contains("weight") ? integer_from_json(c.at("weight"), "cone.weight") : Integer(1);
    f.cones.push_back(std::move(cone));
  }
  trop::validate(f);
  return f;
}

json fan_to_json(const trop::WeightedFan& f) {
  json out;
  out["dim"] = f.dim;
  json lin = json::array();
  for (const auto& v : f.lineality) lin.push_back(vector_to_json(v));
  out["lineality"] = lin;
  json cones = json::array();
  for (const auto& c : f.cones) {
    json gens = json::array();
    for (const auto& v : c.gens) gens.push_back(vector_to_json(v));
    cones.push_back({{"gens", gens}, {"weight", to_json(c.weight)}});
  }
  out["cones"] = cones;
  return out;
}

trop::ValuedPolynomial2D polynomial_from_json(const json& j) {
  trop::ValuedPolynomial2D f;
  const json& terms = field(j, "terms", "polynomial");
  if (!terms.is_array()) bad("polynomial.terms must be an array");
  for (const json& t : terms) {
    const json& e = field(t, "exp", "term");
    if (!e.is_array() || e.size() != 2) bad("term.exp must be a pair");
    f.terms.push_back({{integer_from_json(e[0], "term.exp"), integer_from_json(e[1], "term.exp")},
                       t.contains("val") ? integer_from_json(t.at("val"), "term.val") : Integer(0)});
  }
  return f;
}

trop::TropCurve2D curve_from_json(const json& j) {
  if (j.contains("terms")) return trop::trop_curve(polynomial_from_json(j));
  trop::WeightedFan f = fan_from_json(j);
  if (f.dim != 2 || !f.lineality.empty()) bad("a curve fan must be 2-dimensional without lineality");
  std::vector<std::pair<trop::Vec2, Integer>> rays;
  for (const auto& c : f.cones) {
    if (c.gens.size() != 1) bad("a curve fan consists of rays");
    rays.push_back({{c.gens[0][0], c.gens[0][1]}, c.weight});
  }
  return trop::TropCurve2D::fan(rays);
}

json curve_to_json(const trop::TropCurve2D& c) {
  json out;
  json vs = json::array();
  for (const auto& p : c.vertices) vs.push_back({to_json(p[0]), to_json(p[1])});
  out["vertices"] = vs;
  json es = json::array();
  for (const auto& e : c.edges) {
    json head = e.head ? json(*e.head) : json(nullptr);
    es.push_back({{"tail", e.tail},
                  {"head", head},
                  {"direction", {to_json(e.direction[0]), to_json(e.direction[1])}},
                  {"weight", to_json(e.weight)}});
  }
  out["edges"] = es;
  return out;
}

json stable_intersection_to_json(const trop::StableIntersection& s) {
  json pts = json::array();
  for (const auto& p : s.points)
    pts.push_back({{"point", {to_json(p.point[0]), to_json(p.point[1])}},
                   {"drift", {to_json(p.drift[0]), to_json(p.drift[1])}},
                   {"multiplicity", to_json(p.multiplicity)}});
  return {{"translation", {to_json(s.translation[0]), to_json(s.translation[1])}},
          {"points", pts},
          {"degree", to_json(s.degree())}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string to_dot(const trees::MetricTree& m, const std::string& name) {
  const trees::MarkedTree& t = m.tree();
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n  node [shape=point];\n";
  for (int v = 0; v < t.vertex_count(); ++v) os << "  v" << v << ";\n";
  for (int e = 0; e < t.edge_count(); ++e)
    os << "  v" << t.parent_vertex(e) << " -- v" << t.lower_vertex(e) << " [label=\"" << m.length(e).str() << "\"];\n";
  for (int l : t.legs().elements()) {
    os << "  leg" << l << " [shape=plaintext, label=\"" << l << "\"];\n";
    os << "  v" << t.leg_vertex(l) << " -- leg" << l << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace psifw::io
