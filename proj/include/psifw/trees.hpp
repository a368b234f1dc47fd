// Stable marked trees keyed by split systems, plus metric trees.
#pragma once

#include "psifw/common.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace psifw::trees {

// Raw adjacency description. May describe malformed or unstable trees.
struct TreeGraph {
  int vertexCount = 0;
  std::vector<std::pair<int, int>> edges;  // vertex pairs
  std::vector<std::pair<int, int>> legs;   // (label, vertex)
};

// Throws Error(Structural) on malformed adjacency; returns whether every
// vertex has valence >= 3.
bool validate_stable(const TreeGraph& graph);

struct Branch {
  int anchorVertex = 0;
  LegSet legs;
  std::optional<int> rootEdge;  // absent for a bare leg
  friend bool operator==(const Branch&, const Branch&) = default;
};

// Combinatorial type of a stable tree with leg set `legs` (usually [n]).
// Splits are normalized to the side avoiding the smallest leg and sorted.
// Vertex 0 carries the smallest leg; edge e has lower vertex e+1.
class MarkedTree {
 public:
  MarkedTree() = default;
  static MarkedTree star(int n);
  static MarkedTree star(LegSet legs);
  static MarkedTree from_splits(LegSet legs, std::vector<LegSet> splits);
  static MarkedTree from_splits(int n, std::vector<LegSet> splits);
  static MarkedTree from_graph(const TreeGraph& graph);

  LegSet legs() const { return legs_; }
  int n() const { return legs_.size(); }
  int edge_count() const { return static_cast<int>(splits_.size()); }
  int vertex_count() const { return edge_count() + 1; }
  const std::vector<LegSet>& splits() const { return splits_; }
  LegSet split(int e) const;

  LegSet normalize(LegSet side) const;
  std::optional<int> find_edge(LegSet split) const;  // accepts either side
  int edge_of(LegSet split) const;                   // throws if absent

  int parent_vertex(int e) const;  // upper endpoint of edge e
  int lower_vertex(int e) const { return e + 1; }
  int leg_vertex(int leg) const;
  int valence(int v) const;
  std::vector<Branch> branches(int v) const;  // sorted by smallest leg

  // Edge e separates X from Y (one side contains X, the other Y).
  bool separates(int e, LegSet x, LegSet y) const;
  std::vector<int> path_edges(int a, int b) const;  // edges between legs a and b

  TreeGraph to_graph() const;

  friend bool operator==(const MarkedTree& a, const MarkedTree& b) {
    return a.legs_ == b.legs_ && a.splits_ == b.splits_;
  }
  friend std::strong_ordering operator<=>(const MarkedTree& a, const MarkedTree& b);

 private:
  void rebuild();
  void check_vertex(int v) const;
  void check_edge(int e) const;

  LegSet legs_;
  std::vector<LegSet> splits_;
  std::vector<int> parent_;     // per edge
  std::vector<int> legVertex_;  // indexed by label
};

bool compatible(LegSet a, LegSet b, LegSet all);

// Positive integer lengths aligned with tree.splits().
class MetricTree {
 public:
  MetricTree() = default;
  MetricTree(MarkedTree tree, std::vector<Integer> lengths);
  static MetricTree from_split_lengths(LegSet legs, std::vector<std::pair<LegSet, Integer>> edges);
  static MetricTree from_split_lengths(int n, std::vector<std::pair<LegSet, Integer>> edges);

  const MarkedTree& tree() const { return tree_; }
  const std::vector<Integer>& lengths() const { return lengths_; }
  const Integer& length(int e) const { return lengths_.at(static_cast<std::size_t>(e)); }
  const Integer& length_of(LegSet split) const { return length(tree_.edge_of(split)); }
  Integer leg_distance(int a, int b) const;

  friend bool operator==(const MetricTree&, const MetricTree&) = default;
  friend std::strong_ordering operator<=>(const MetricTree& a, const MetricTree& b);

 private:
  MarkedTree tree_;
  std::vector<Integer> lengths_;
};

const std::vector<LegSet>& splits(const MarkedTree& tree);
MarkedTree contract_edge(const MarkedTree& tree, int edge);
// B1 lists the leg sets of the branches placed on the first new vertex;
// the remaining branches of v form B2.
MarkedTree insert_edge(const MarkedTree& tree, int vertex, std::span<const LegSet> side1);
std::vector<Branch> branches(const MarkedTree& tree, int vertex);
MarkedTree forgetful(const MarkedTree& tree, LegSet s);
MetricTree forgetful_metric(const MetricTree& gamma, LegSet s);
Integer hull_distance(const MetricTree& gamma, int i, int j, int l);
int shortest_edge(const MetricTree& gamma);

// All stable trees on `legs` with exactly r edges, sorted.
std::vector<MarkedTree> enumerate_trees(LegSet legs, int r);
// All maximal (n-3 edge) trees whose split set contains tree's splits.
std::vector<MarkedTree> maximal_refinements(const MarkedTree& tree);

}  // namespace psifw::trees
