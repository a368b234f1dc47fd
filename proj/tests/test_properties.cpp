// Seeded randomized properties that complement the acceptance suite.
#include "doctest.h"
#include "fixtures.hpp"

#include "psifw/firework.hpp"
#include "psifw/tropcycles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace psifw;
using linalg::IntMatrix;
using trees::MarkedTree;
using trees::MetricTree;

namespace {

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t s) : rng(s) {}
  int below(int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
};

MarkedTree random_tree(Draw& d, int n) {
  auto all = trees::enumerate_trees(LegSet::range(n), d.between(0, n - 3));
  return all[static_cast<std::size_t>(d.below(static_cast<int>(all.size())))];
}

MetricTree random_metric(Draw& d, int n) {
  MarkedTree t = random_tree(d, n);
  std::vector<Integer> lens;
  for (int e = 0; e < t.edge_count(); ++e) lens.push_back(d.between(1, 50));
  return MetricTree(t, lens);
}

Integer abs_int(Integer x) { return x < 0 ? Integer(-x) : x; }

IntMatrix random_matrix(Draw& d, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) m(a, b) = d.between(-6, 6);
  return m;
}

}  // namespace

TEST_CASE("path matrices are unimodular with bounded inverses") {
  std::size_t seen = 0;
  for (auto cfg : {fixtures::worked_example_specs(),
                   firework::make_specs(7, 15, {{LegSet::range(7), 1, 2}, {LegSet::range(7), 3, 1},
                                                {LegSet{1, 2, 4, 6}, 4, 2}, {LegSet::range(7), 5, 7}})}) {
    auto levels = firework::firework_run(cfg.front().n, cfg);
    for (const auto& level : levels)
      for (const auto& p : level.points) {
        if (level.r == 0) continue;
        ++seen;
        IntMatrix a = firework::path_system(p.tuple, cfg).A;
        IntMatrix inv = linalg::unit_upper_triangular_inverse(a);
        CHECK(a * inv == IntMatrix::identity(a.rows()));
        CHECK(abs_int(linalg::determinant(a)) == 1);
        for (std::size_t q = 0; q < a.rows(); ++q)
          for (std::size_t s = q + 1; s < a.cols(); ++s) CHECK(abs_int(inv(q, s)) <= ipow(Integer(2), static_cast<unsigned>(s - q - 1)));
      }
  }
  CHECK(seen > 10);
}

TEST_CASE("canonical keys agree with relabelled graphs") {
  Draw d(11);
  for (int x = 0; x < 300; ++x) {
    int n = d.between(4, 8);
    MarkedTree t = random_tree(d, n);
    CHECK(MarkedTree::from_graph(t.to_graph()) == t);

    // shuffle vertex ids
    trees::TreeGraph g = t.to_graph();
    std::vector<int> perm(static_cast<std::size_t>(g.vertexCount));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), d.rng);
    for (auto& [a, b] : g.edges) a = perm[static_cast<std::size_t>(a)], b = perm[static_cast<std::size_t>(b)];
    for (auto& [l, v] : g.legs) v = perm[static_cast<std::size_t>(v)];
    CHECK(MarkedTree::from_graph(g) == t);

    // relabel legs: graph route and split route agree
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), d.rng);
    auto relabel = [&](LegSet s) {
      LegSet out;
      for (int l : s.elements()) out.insert(sigma[static_cast<std::size_t>(l - 1)]);
      return out;
    };
    std::vector<LegSet> splits;
    for (LegSet s : t.splits()) splits.push_back(relabel(s));
    trees::TreeGraph h = t.to_graph();
    for (auto& [l, v] : h.legs) l = sigma[static_cast<std::size_t>(l - 1)];
    CHECK(MarkedTree::from_graph(h) == MarkedTree::from_splits(n, splits));
  }
}

TEST_CASE("forgetful maps compose and preserve hull distances") {
  Draw d(12);
  for (int x = 0; x < 300; ++x) {
    int n = d.between(5, 8);
    MetricTree g = random_metric(d, n);
    LegSet s;
    while (s.size() < 4) s.insert(d.between(1, n));
    std::vector<int> e = s.elements();
    LegSet t;
    while (t.size() < 3) t.insert(e[static_cast<std::size_t>(d.below(static_cast<int>(e.size())))]);
    CHECK(trees::forgetful(trees::forgetful(g.tree(), s), t) == trees::forgetful(g.tree(), t));
    MetricTree gs = trees::forgetful_metric(g, s);
    CHECK(trees::forgetful_metric(gs, t) == trees::forgetful_metric(g, t));

    std::vector<int> te = t.elements();
    int i = te[0], j = te[1], l = te[2];
    Integer h = trees::hull_distance(g, i, j, l);
    CHECK(h >= 0);
    CHECK(h == trees::hull_distance(g, i, l, j));
    // edges that only carry leg i inside S become part of that leg
    Integer hs = trees::hull_distance(gs, i, j, l);
    CHECK(hs <= h);
    // three-point formula
    CHECK(2 * h == g.leg_distance(i, j) + g.leg_distance(i, l) - g.leg_distance(j, l));
    CHECK(2 * hs == gs.leg_distance(i, j) + gs.leg_distance(i, l) - gs.leg_distance(j, l));
  }
}

TEST_CASE("min profiles respect the separation slack") {
  // On a point of FW_r the runner-up value exceeds the minimum: exactly two legs achieve it.
  auto specs = fixtures::worked_example_specs();
  auto levels = firework::firework_run(6, specs);
  for (const auto& level : levels)
    for (const auto& p : level.points)
      for (int q = 0; q < level.r; ++q) {
        auto prof = kapranov::min_profile(p.metric, specs[static_cast<std::size_t>(q)]);
        REQUIRE(prof.argmins.size() == 2);
        Integer m = prof.minimum();
        for (const auto& [leg, v] : prof.values)
          if (std::find(prof.argmins.begin(), prof.argmins.end(), leg) == prof.argmins.end()) CHECK(v > m);
      }
}

TEST_CASE("normal forms on random matrices") {
  Draw d(13);
  for (int x = 0; x < 200; ++x) {
    std::size_t r = static_cast<std::size_t>(d.between(1, 4)), c = static_cast<std::size_t>(d.between(1, 4));
    IntMatrix m = random_matrix(d, r, c);
    auto h = linalg::hnf(m);
    CHECK(h.U * m == h.H);
    CHECK(abs_int(linalg::determinant(h.U)) == 1);
    auto s = linalg::smith(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.V * s.Vinv == IntMatrix::identity(c));
    CHECK(s.rank == linalg::rank(m));
    for (std::size_t k = 1; k < s.rank; ++k) CHECK(s.D(k, k) % s.D(k - 1, k - 1) == 0);
  }
}

TEST_CASE("stable intersection degree is translation invariant") {
  Draw d(14);
  auto random_poly = [&] {
    trop::ValuedPolynomial2D f;
    std::set<std::pair<int, int>> seen;
    int want = d.between(3, 6);
    while (static_cast<int>(f.terms.size()) < want) {
      std::pair<int, int> e{d.below(4), d.below(4)};
      if (seen.insert(e).second) f.terms.push_back({{e.first, e.second}, d.between(-4, 4)});
    }
    return f;
  };
  int checked = 0;
  for (int x = 0; x < 60; ++x) {
    auto f = random_poly(), g = random_poly();
    trop::TropCurve2D c1 = trop::trop_curve(f), c2 = trop::trop_curve(g);
    Integer base = trop::stable_intersection_2d(c1, c2).degree();
    // shifting valuations by <w,u> translates the curve
    int wx = d.between(-3, 3), wy = d.between(-3, 3);
    trop::ValuedPolynomial2D shifted = g;
    for (auto& t : shifted.terms) t.valuation += wx * t.exponent[0] + wy * t.exponent[1];
    CHECK(trop::stable_intersection_2d(c1, trop::trop_curve(shifted)).degree() == base);
    CHECK(trop::stable_intersection_2d(c1, c2, std::nullopt, 7).degree() == base);
    CHECK(trop::stable_intersection_2d(c2, c1).degree() == base);
    ++checked;
  }
  CHECK(checked == 60);
}
