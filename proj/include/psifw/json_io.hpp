// JSON encodings for trees, configs, fans, curves and reports.
#pragma once

#include "psifw/firework.hpp"
#include "psifw/kapranov.hpp"
#include "psifw/tropcycles.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psifw::io {

using json = nlohmann::ordered_json;

// Integers are written as decimal strings and read from strings or numbers.
Integer integer_from_json(const json& j, const std::string& what);
Rational rational_from_json(const json& j, const std::string& what);
json to_json(const Integer& x);
json to_json(const Rational& x);
json to_json(LegSet s);
LegSet legset_from_json(const json& j, const std::string& what);

json tree_to_json(const trees::MarkedTree& t);
json tree_to_json(const trees::MetricTree& t);
trees::MetricTree metric_tree_from_json(const json& j);

struct FireworkConfig {
  int n = 0;
  std::optional<Integer> B;
  std::vector<firework::PsiClass> classes;
};

FireworkConfig firework_config_from_json(const json& j);
kapranov::PsiSpec spec_from_json(const json& j, int n);

json min_profile_to_json(const kapranov::MinProfile& p, int q);

struct ReportOptions {
  bool oracle = false;
  std::vector<std::string> warnings;
};

json firework_report(int n, std::span<const kapranov::PsiSpec> specs, const std::vector<firework::FireworkLevel>& levels,
                     const ReportOptions& options);
json cycle_to_json(const firework::Cycle& c);

trop::WeightedFan fan_from_json(const json& j);
json fan_to_json(const trop::WeightedFan& f);
trop::ValuedPolynomial2D polynomial_from_json(const json& j);
trop::TropCurve2D curve_from_json(const json& j);  // polynomial or 2-D fan
json curve_to_json(const trop::TropCurve2D& c);
json stable_intersection_to_json(const trop::StableIntersection& s);

json parse(const std::string& text);  // throws Error(Parse)
json read_file(const std::string& path);

std::string to_dot(const trees::MetricTree& t, const std::string& name = "tree");

}  // namespace psifw::io
