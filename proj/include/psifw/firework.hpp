// Firework recursion for intersections of tropical psi-hypersurfaces.
#pragma once

#include "psifw/intlinalg.hpp"
#include "psifw/kapranov.hpp"
#include "psifw/trees.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace psifw::firework {

using kapranov::PsiSpec;
using linalg::IntMatrix;
using trees::Branch;
using trees::MarkedTree;
using trees::MetricTree;

// A psi-class datum before n, q and B are attached.
struct PsiClass {
  LegSet S;
  int i = 0;
  int j = 0;
};

std::vector<PsiSpec> make_specs(int n, const Integer& B, const std::vector<PsiClass>& classes);
void validate_specs(int n, std::span<const PsiSpec> specs);

// Edges are named by their normalized splits, listed by creation level.
struct StarTuple {
  MarkedTree tree;
  std::vector<LegSet> edgeOrder;
  std::vector<int> k;
  std::vector<int> l;
  int r() const { return static_cast<int>(edgeOrder.size()); }
  friend bool operator==(const StarTuple&, const StarTuple&) = default;
};

struct PathSystem {
  IntMatrix A;
  std::vector<Integer> L;
  std::vector<Integer> y;
};

struct FireworkPoint {
  MetricTree metric;
  StarTuple tuple;
};

struct FireworkLevel {
  int r = 0;
  std::vector<FireworkPoint> points;
};

struct InsertionSite {
  int vertex = 0;
  Branch I;
  Branch J;
  Branch K;
  int k = 0;
};

struct Cycle {
  std::map<MarkedTree, Integer> strata;
  Integer degree() const;
};

bool check_star(const StarTuple& t, std::span<const PsiSpec> specs);
PathSystem path_system(const StarTuple& t, std::span<const PsiSpec> specs);
MetricTree realize(const StarTuple& t, std::span<const PsiSpec> specs);
std::optional<InsertionSite> insertion_site(const MetricTree& gamma, const PsiSpec& spec);
std::vector<FireworkPoint> allowable_insertions(const FireworkPoint& point, std::span<const PsiSpec> specs);
FireworkPoint contract_shortest(const FireworkPoint& child, std::span<const PsiSpec> specs);

Integer contraction_bound(int n, const Integer& B, int childLevel);
// Throws Error(Inconsistency) when a point violates the structural bounds.
void assert_structure(const FireworkPoint& point, std::span<const PsiSpec> specs);

struct RunOptions {
  std::optional<int> maxLevel;
  unsigned threads = 1;
};

FireworkPoint cone_point(int n);
std::vector<FireworkLevel> firework_run(int n, std::span<const PsiSpec> specs, const RunOptions& options = {});
Cycle limit_cycle(const FireworkLevel& level);

std::vector<MetricTree> brute_force_fw(int n, std::span<const PsiSpec> specs, int r);

IntMatrix certificate_matrix(const FireworkPoint& point, const MarkedTree& maximalType,
                             std::span<const PsiSpec> specs);
bool certify_matrix(const IntMatrix& m, const IntMatrix& a);
bool transversality_certificate(const FireworkPoint& point, const MarkedTree& maximalType,
                                std::span<const PsiSpec> specs);

Integer multinomial(int total, const std::vector<int>& parts);

}  // namespace psifw::firework
