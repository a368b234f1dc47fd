#include "doctest.h"
#include "fixtures.hpp"

#include "psifw/trees.hpp"

using namespace psifw;
using namespace psifw::trees;

namespace {

// Figure caterpillar: {1,2} -10- {3} -40- v -3- {4,5}, v -100- {6,7}.
MetricTree forget_figure() {
  return MetricTree::from_split_lengths(
      7, {{LegSet{3, 4, 5, 6, 7}, 10}, {LegSet{4, 5, 6, 7}, 40}, {LegSet{6, 7}, 100}, {LegSet{4, 5}, 3}});
}

// Tree of the branches example: w carries 1,3; v carries 2,4,5.
MarkedTree branches_example() { return MarkedTree::from_splits(5, {LegSet{2, 4, 5}}); }

}  // namespace

TEST_CASE("validate_stable") {
  CHECK(validate_stable({1, {}, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}}));
  CHECK_FALSE(validate_stable({3, {{0, 1}, {1, 2}}, {{1, 0}, {2, 0}, {3, 2}, {4, 2}}}));
  CHECK(validate_stable(forget_figure().tree().to_graph()));
  CHECK(forget_figure().tree().vertex_count() == 5);
  CHECK_THROWS_AS(validate_stable({2, {}, {{1, 0}, {2, 0}, {3, 1}}}), Error);                        // disconnected
  CHECK_THROWS_AS(validate_stable({2, {{0, 1}, {1, 0}}, {{1, 0}, {2, 0}, {3, 1}, {4, 1}}}), Error);  // cycle
  CHECK_THROWS_AS(validate_stable({1, {}, {{1, 0}, {1, 0}, {2, 0}}}), Error);                        // duplicate
  CHECK_THROWS_AS(MarkedTree::from_graph({3, {{0, 1}, {1, 2}}, {{1, 0}, {2, 0}, {3, 2}, {4, 2}}}), Error);
}

TEST_CASE("graph round trip") {
  MarkedTree t = forget_figure().tree();
  CHECK(MarkedTree::from_graph(t.to_graph()) == t);
}

TEST_CASE("splits") {
  CHECK(splits(MarkedTree::star(5)).empty());
  CHECK(splits(MarkedTree::from_splits(6, {LegSet{1, 4, 5, 6}})) == std::vector<LegSet>{LegSet{2, 3}});
  MarkedTree fin = fixtures::worked_example_final1().metric.tree();
  CHECK(splits(fin) == std::vector<LegSet>{LegSet{2, 3}, LegSet{2, 3, 6}, LegSet{2, 3, 5, 6}});
  CHECK_THROWS_AS(MarkedTree::from_splits(6, {LegSet{2, 3}, LegSet{3, 4}}), Error);
  CHECK_THROWS_AS(MarkedTree::from_splits(6, {LegSet{2}}), Error);
}

TEST_CASE("contract_edge") {
  CHECK(contract_edge(MarkedTree::from_splits(6, {LegSet{2, 3}}), 0) == MarkedTree::star(6));
  MarkedTree fin = fixtures::worked_example_final1().metric.tree();
  MarkedTree t1 = contract_edge(fin, fin.edge_of(LegSet{2, 3, 5, 6}));
  CHECK(t1.splits() == std::vector<LegSet>{LegSet{2, 3}, LegSet{2, 3, 6}});
  CHECK_THROWS_AS(contract_edge(fin, 7), Error);
}

TEST_CASE("insert_edge") {
  MarkedTree star = MarkedTree::star(6);
  std::vector<LegSet> side{LegSet{2}, LegSet{3}};
  MarkedTree one = insert_edge(star, 0, side);
  CHECK(one.splits() == std::vector<LegSet>{LegSet{2, 3}});
  CHECK(contract_edge(one, 0) == star);

  MarkedTree t = branches_example();
  int v = t.leg_vertex(2);
  std::vector<LegSet> b1{LegSet{1, 3}, LegSet{2}};
  MarkedTree ei = insert_edge(t, v, b1);
  CHECK(ei.splits() == std::vector<LegSet>{LegSet{4, 5}, LegSet{2, 4, 5}});
  CHECK(contract_edge(ei, ei.edge_of(LegSet{1, 2, 3})) == t);

  std::vector<LegSet> small{LegSet{2}};
  CHECK_THROWS_AS(insert_edge(star, 0, small), Error);
  std::vector<LegSet> big{LegSet{1}, LegSet{2}, LegSet{3}, LegSet{4}, LegSet{5}};
  CHECK_THROWS_AS(insert_edge(star, 0, big), Error);
}

TEST_CASE("branches") {
  auto bs = branches(MarkedTree::star(5), 0);
  REQUIRE(bs.size() == 5);
  for (const auto& b : bs) {
    CHECK(b.legs.size() == 1);
    CHECK_FALSE(b.rootEdge.has_value());
  }
  MarkedTree t = branches_example();
  auto bv = branches(t, t.leg_vertex(2));
  REQUIRE(bv.size() == 4);
  CHECK(bv[0].legs == LegSet{1, 3});
  CHECK(bv[0].rootEdge.has_value());
  CHECK(bv[1].legs == LegSet{2});
  CHECK(bv[2].legs == LegSet{4});
  CHECK(bv[3].legs == LegSet{5});
}

TEST_CASE("forgetful maps") {
  MetricTree f = forgetful_metric(forget_figure(), LegSet{1, 3, 6, 7});
  REQUIRE(f.tree().edge_count() == 1);
  CHECK(f.lengths().front() == 140);
  CHECK(f.tree().splits().front() == LegSet{6, 7});
  CHECK(forgetful_metric(forget_figure(), LegSet::range(7)) == forget_figure());
  CHECK(forgetful(MarkedTree::star(6), LegSet{2, 4, 5}) == MarkedTree::star(LegSet{2, 4, 5}));
  CHECK_THROWS_AS(forgetful(MarkedTree::star(6), LegSet{2, 4}), Error);
}

TEST_CASE("hull_distance") {
  MetricTree k = fixtures::kapranov_example();
  std::vector<Integer> d;
  for (int l = 3; l <= 9; ++l) d.push_back(hull_distance(k, 1, 2, l));
  CHECK(d == std::vector<Integer>{2, 0, 5, 5, 2, 0, 2});

  MetricTree one = MetricTree::from_split_lengths(5, {{LegSet{2, 3}, 7}});
  CHECK(hull_distance(one, 2, 1, 3) == 0);
  CHECK(hull_distance(one, 1, 2, 3) == 7);

  MetricTree fin = fixtures::worked_example_final1().metric;
  std::vector<Integer> e;
  for (int l : {1, 3, 5, 6}) e.push_back(hull_distance(fin, 2, 4, l));
  CHECK(e == std::vector<Integer>{200, 0, 199, 180});
  CHECK_THROWS_AS(hull_distance(fin, 2, 2, 3), Error);
}

TEST_CASE("shortest_edge") {
  MetricTree fin = fixtures::worked_example_final1().metric;
  CHECK(fin.length(shortest_edge(fin)) == 1);
  CHECK(shortest_edge(MetricTree::from_split_lengths(5, {{LegSet{2, 3}, 9}})) == 0);
  MetricTree tie = MetricTree::from_split_lengths(6, {{LegSet{2, 3}, 5}, {LegSet{5, 6}, 5}});
  CHECK_THROWS_AS(shortest_edge(tie), Error);
  CHECK_THROWS_AS(MetricTree::from_split_lengths(6, {{LegSet{2, 3}, 0}}), Error);
}

TEST_CASE("tree enumeration counts") {
  // maximal trees on n legs: (2n-5)!!
  CHECK(enumerate_trees(LegSet::range(5), 2).size() == 15);
  CHECK(enumerate_trees(LegSet::range(6), 3).size() == 105);
  CHECK(enumerate_trees(LegSet::range(6), 1).size() == 25);
  CHECK(maximal_refinements(MarkedTree::star(6)).size() == 105);
}
