// Tropical Kapranov coordinates and psi-hypersurface membership.
#pragma once

#include "psifw/trees.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace psifw::kapranov {

struct PsiSpec {
  int n = 0;  // total legs; fixes the exponent n-3-q
  LegSet S;
  int i = 0;
  int j = 0;
  int q = 1;
  Integer B = 0;

  std::vector<int> others() const;  // S \ {i,j}, ascending
  Integer scale() const;            // B^(n-3-q)
  Integer valuation(int leg) const { return leg * scale(); }
  friend bool operator==(const PsiSpec&, const PsiSpec&) = default;
};

void validate(const PsiSpec& spec);
Integer default_base(int n);  // 2n+1
std::optional<std::string> base_warning(int n, const Integer& B);

struct MinProfile {
  std::vector<std::pair<int, Integer>> values;  // (l, d_l + a_l), ascending l
  std::vector<int> argmins;
  Integer minimum() const;
};

std::vector<std::pair<int, Integer>> kapranov_image(const trees::MetricTree& gamma, const PsiSpec& spec);
MinProfile min_profile(const trees::MetricTree& gamma, const PsiSpec& spec);
// Custom valuations aligned with spec.others(); they must be pairwise distinct.
MinProfile min_profile(const trees::MetricTree& gamma, const PsiSpec& spec, std::span<const Integer> valuations);
bool in_hypersurface(const trees::MetricTree& gamma, const PsiSpec& spec);
bool achieved_exactly_twice(const trees::MetricTree& gamma, const PsiSpec& spec);

}  // namespace psifw::kapranov
