// Shared example configurations for the test binaries.
#pragma once

#include "psifw/firework.hpp"
#include "psifw/trees.hpp"

namespace fixtures {

using psifw::Integer;
using psifw::LegSet;

// n = 6, B = 10 worked example.
inline std::vector<psifw::kapranov::PsiSpec> worked_example_specs() {
  return psifw::firework::make_specs(6, 10, {{LegSet::range(6), 2, 4},
                                             {LegSet{1, 3, 4, 6}, 3, 1},
                                             {LegSet{1, 2, 4, 5, 6}, 5, 4}});
}

inline psifw::firework::FireworkPoint worked_example_final1() {
  using namespace psifw;
  trees::MarkedTree t = trees::MarkedTree::from_splits(6, {LegSet{2, 3}, LegSet{2, 3, 6}, LegSet{2, 3, 5, 6}});
  firework::StarTuple tup{t, {LegSet{2, 3}, LegSet{2, 3, 6}, LegSet{2, 3, 5, 6}}, {1, 4, 1}, {3, 6, 2}};
  auto specs = worked_example_specs();
  return {firework::realize(tup, specs), tup};
}

inline psifw::firework::FireworkPoint worked_example_final2() {
  using namespace psifw;
  trees::MarkedTree t = trees::MarkedTree::from_splits(6, {LegSet{2, 3}, LegSet{2, 3, 5, 6}, LegSet{5, 6}});
  firework::StarTuple tup{t, {LegSet{2, 3}, LegSet{2, 3, 5, 6}, LegSet{5, 6}}, {1, 4, 2}, {3, 6, 6}};
  auto specs = worked_example_specs();
  return {firework::realize(tup, specs), tup};
}

// Kapranov example tree, lengths a..e = 1..5.
inline psifw::trees::MetricTree kapranov_example() {
  return psifw::trees::MetricTree::from_split_lengths(
      9, {{LegSet{4, 8}, 1}, {LegSet{2, 3, 5, 6, 7, 9}, 2}, {LegSet{2, 5, 6}, 3},
          {LegSet{3, 7, 9}, 4}, {LegSet{7, 9}, 5}});
}

}  // namespace fixtures
