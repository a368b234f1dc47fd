#include "psifw/kapranov.hpp"

#include <algorithm>

namespace psifw::kapranov {

using trees::MetricTree;

std::vector<int> PsiSpec::others() const {
  LegSet rest = S;
  rest.erase(i);
  rest.erase(j);
  return rest.elements();
}

Integer PsiSpec::scale() const {
  int e = n - 3 - q;
  if (e < 0) fail(ErrorKind::Precondition, "level q exceeds n-3");
  return ipow(B, static_cast<unsigned>(e));
}

void validate(const PsiSpec& s) {
  if (s.n < 4 || s.n > kMaxLegs) fail(ErrorKind::Precondition, "n must lie in 4..63");
  if (!s.S.subset_of(LegSet::range(s.n))) fail(ErrorKind::Precondition, "S must be a subset of [n]");
  if (s.S.size() < 3) fail(ErrorKind::Precondition, "|S| must be at least 3");
  if (s.i == s.j) fail(ErrorKind::Precondition, "i and j must differ");
  if (!s.S.contains(s.i) || !s.S.contains(s.j)) fail(ErrorKind::Precondition, "i and j must lie in S");
  if (s.q < 1 || s.q > s.n - 3) fail(ErrorKind::Precondition, "level q must lie in 1..n-3");
  if (s.B < 1) fail(ErrorKind::Precondition, "base B must be positive");
}

Integer default_base(int n) { return 2 * n + 1; }

std::optional<std::string> base_warning(int n, const Integer& B) {
  if (B >= default_base(n)) return std::nullopt;
  return "base B=" + B.str() + " is below 2n+1=" + default_base(n).str() +
         "; structural assertions stay active";
}

Integer MinProfile::minimum() const {
  for (const auto& [l, v] : values)
    if (l == argmins.front()) return v;
  fail(ErrorKind::Inconsistency, "empty min profile");
}

std::vector<std::pair<int, Integer>> kapranov_image(const MetricTree& gamma, const PsiSpec& spec) {
  validate(spec);
  if (!spec.S.subset_of(gamma.tree().legs())) fail(ErrorKind::Precondition, "S is not a subset of the tree's legs");
  // positions are measured on the S-hull, where the base of leg i may differ
  const MetricTree hull = spec.S == gamma.tree().legs() ? gamma : trees::forgetful_metric(gamma, spec.S);
  std::vector<std::pair<int, Integer>> out;
  for (int l : spec.others()) out.emplace_back(l, trees::hull_distance(hull, spec.i, spec.j, l));
  return out;
}

namespace {

MinProfile assemble(const std::vector<std::pair<int, Integer>>& image, std::span<const Integer> vals) {
  MinProfile p;
  for (std::size_t x = 0; x < image.size(); ++x) p.values.emplace_back(image[x].first, image[x].second + vals[x]);
  if (p.values.empty()) fail(ErrorKind::Precondition, "S \\ {i,j} is empty");
  Integer best = p.values.front().second;
  for (const auto& [l, v] : p.values) best = std::min(best, v);
  for (const auto& [l, v] : p.values)
    if (v == best) p.argmins.push_back(l);
  return p;
}

}  // namespace

MinProfile min_profile(const MetricTree& gamma, const PsiSpec& spec) {
  auto image = kapranov_image(gamma, spec);
  std::vector<Integer> vals;
  for (const auto& [l, d] : image) vals.push_back(spec.valuation(l));
  return assemble(image, vals);
}

MinProfile min_profile(const MetricTree& gamma, const PsiSpec& spec, std::span<const Integer> valuations) {
  auto image = kapranov_image(gamma, spec);
  if (valuations.size() != image.size()) fail(ErrorKind::Precondition, "one valuation per leg of S \\ {i,j} required");
  std::vector<Integer> sorted(valuations.begin(), valuations.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::Precondition, "valuations must be pairwise distinct");
  return assemble(image, valuations);
}

bool in_hypersurface(const MetricTree& gamma, const PsiSpec& spec) {
  return min_profile(gamma, spec).argmins.size() >= 2;
}

bool achieved_exactly_twice(const MetricTree& gamma, const PsiSpec& spec) {
  return min_profile(gamma, spec).argmins.size() == 2;
}

}  // namespace psifw::kapranov
