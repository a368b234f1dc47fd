#include "psifw/trees.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace psifw::trees {

namespace {

std::string str(int x) { return std::to_string(x); }

}  // namespace

bool compatible(LegSet a, LegSet b, LegSet all) {
  return a.subset_of(b) || b.subset_of(a) || a.disjoint(b) || (a | b) == all;
}

bool validate_stable(const TreeGraph& g) {
  if (g.vertexCount < 1) fail(ErrorKind::Structural, "tree has no vertices");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertexCount));
  std::vector<int> valence(static_cast<std::size_t>(g.vertexCount), 0);
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertexCount || b >= g.vertexCount)
      fail(ErrorKind::Structural, "edge endpoint out of range");
    if (a == b) fail(ErrorKind::Structural, "self-loop at vertex " + str(a));
    adj[a].push_back(b);
    adj[b].push_back(a);
    ++valence[a];
    ++valence[b];
  }
  if (static_cast<int>(g.edges.size()) != g.vertexCount - 1)
    fail(ErrorKind::Structural, "edge count does not match a tree (cycle or disconnected)");
  std::vector<bool> seen(static_cast<std::size_t>(g.vertexCount), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != g.vertexCount) fail(ErrorKind::Structural, "tree is disconnected");
  LegSet labels;
  for (auto [label, v] : g.legs) {
    if (label < 1 || label > kMaxLegs) fail(ErrorKind::Structural, "leg label out of range: " + str(label));
    if (labels.contains(label)) fail(ErrorKind::Structural, "duplicate leg label " + str(label));
    if (v < 0 || v >= g.vertexCount) fail(ErrorKind::Structural, "leg attached to unknown vertex");
    labels.insert(label);
    ++valence[v];
  }
  if (labels != LegSet::range(labels.empty() ? 0 : labels.max()))
    fail(ErrorKind::Structural, "leg labels are not 1..n");
  return std::all_of(valence.begin(), valence.end(), [](int d) { return d >= 3; });
}

MarkedTree MarkedTree::star(int n) { return star(LegSet::range(n)); }

MarkedTree MarkedTree::star(LegSet legs) { return from_splits(legs, {}); }

MarkedTree MarkedTree::from_splits(int n, std::vector<LegSet> splits) {
  return from_splits(LegSet::range(n), std::move(splits));
}

MarkedTree MarkedTree::from_splits(LegSet legs, std::vector<LegSet> splits) {
  if (legs.size() < 3) fail(ErrorKind::Structural, "a stable tree needs at least 3 legs");
  MarkedTree t;
  t.legs_ = legs;
  const int n = legs.size();
  for (LegSet& a : splits) {
    if (!a.subset_of(legs)) fail(ErrorKind::Structural, "split " + a.to_string() + " uses unknown legs");
    a = t.normalize(a);
    if (a.size() < 2 || a.size() > n - 2)
      fail(ErrorKind::Structural, "split " + a.to_string() + " does not define an internal edge");
  }
  std::sort(splits.begin(), splits.end());
  if (std::adjacent_find(splits.begin(), splits.end()) != splits.end())
    fail(ErrorKind::Structural, "duplicate split");
  for (std::size_t x = 0; x < splits.size(); ++x)
    for (std::size_t y = x + 1; y < splits.size(); ++y)
      if (!compatible(splits[x], splits[y], legs))
        fail(ErrorKind::Structural,
             "incompatible splits " + splits[x].to_string() + " and " + splits[y].to_string());
  t.splits_ = std::move(splits);
  t.rebuild();
  return t;
}

MarkedTree MarkedTree::from_graph(const TreeGraph& g) {
  if (!validate_stable(g)) fail(ErrorKind::Structural, "tree has a vertex of valence < 3");
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.vertexCount));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].first].push_back({g.edges[e].second, static_cast<int>(e)});
    adj[g.edges[e].second].push_back({g.edges[e].first, static_cast<int>(e)});
  }
  std::vector<LegSet> at(static_cast<std::size_t>(g.vertexCount));
  LegSet all;
  for (auto [label, v] : g.legs) {
    at[v].insert(label);
    all.insert(label);
  }
  // legs below each vertex when rooted at vertex 0
  std::vector<LegSet> below(static_cast<std::size_t>(g.vertexCount));
  std::vector<LegSet> splits;
  std::function<LegSet(int, int)> dfs = [&](int v, int parent) {
    LegSet s = at[v];
    for (auto [w, e] : adj[v]) {
      if (w == parent) continue;
      LegSet sub = dfs(w, v);
      splits.push_back(sub);
      s = s | sub;
    }
    return s;
  };
  dfs(0, -1);
  return from_splits(all, std::move(splits));
}

LegSet MarkedTree::normalize(LegSet side) const {
  return side.contains(legs_.min()) ? legs_ - side : side;
}

LegSet MarkedTree::split(int e) const {
  check_edge(e);
  return splits_[static_cast<std::size_t>(e)];
}

std::optional<int> MarkedTree::find_edge(LegSet s) const {
  LegSet a = normalize(s & legs_);
  auto it = std::lower_bound(splits_.begin(), splits_.end(), a);
  if (it == splits_.end() || *it != a) return std::nullopt;
  return static_cast<int>(it - splits_.begin());
}

int MarkedTree::edge_of(LegSet s) const {
  auto e = find_edge(s);
  if (!e) fail(ErrorKind::Precondition, "no edge with split " + s.to_string());
  return *e;
}

void MarkedTree::rebuild() {
  const std::size_t r = splits_.size();
  parent_.assign(r, 0);
  for (std::size_t e = 0; e < r; ++e) {
    for (std::size_t f = e + 1; f < r; ++f) {
      if (splits_[e].subset_of(splits_[f]) && splits_[e] != splits_[f]) {
        parent_[e] = static_cast<int>(f) + 1;
        break;
      }
    }
  }
  legVertex_.assign(kMaxLegs + 1, -1);
  for (int l : legs_.elements()) {
    legVertex_[l] = 0;
    for (std::size_t e = 0; e < r; ++e) {
      if (splits_[e].contains(l)) {
        legVertex_[l] = static_cast<int>(e) + 1;
        break;
      }
    }
  }
}

void MarkedTree::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) fail(ErrorKind::Precondition, "unknown vertex " + str(v));
}

void MarkedTree::check_edge(int e) const {
  if (e < 0 || e >= edge_count()) fail(ErrorKind::Precondition, "unknown edge " + str(e));
}

int MarkedTree::parent_vertex(int e) const {
  check_edge(e);
  return parent_[static_cast<std::size_t>(e)];
}

int MarkedTree::leg_vertex(int leg) const {
  if (!legs_.contains(leg)) fail(ErrorKind::Precondition, "unknown leg " + str(leg));
  return legVertex_[static_cast<std::size_t>(leg)];
}

int MarkedTree::valence(int v) const { return static_cast<int>(branches(v).size()); }

std::vector<Branch> MarkedTree::branches(int v) const {
  check_vertex(v);
  std::vector<Branch> out;
  if (v > 0) out.push_back({v, legs_ - splits_[static_cast<std::size_t>(v - 1)], v - 1});
  for (int e = 0; e < edge_count(); ++e)
    if (parent_[static_cast<std::size_t>(e)] == v) out.push_back({v, splits_[static_cast<std::size_t>(e)], e});
  for (int l : legs_.elements())
    if (legVertex_[static_cast<std::size_t>(l)] == v) out.push_back({v, LegSet::single(l), std::nullopt});
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) { return a.legs.min() < b.legs.min(); });
  return out;
}

bool MarkedTree::separates(int e, LegSet x, LegSet y) const {
  LegSet a = split(e);
  return (x.subset_of(a) && y.disjoint(a)) || (y.subset_of(a) && x.disjoint(a));
}

std::vector<int> MarkedTree::path_edges(int a, int b) const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (splits_[static_cast<std::size_t>(e)].contains(a) != splits_[static_cast<std::size_t>(e)].contains(b))
      out.push_back(e);
  return out;
}

TreeGraph MarkedTree::to_graph() const {
  TreeGraph g;
  g.vertexCount = vertex_count();
  for (int e = 0; e < edge_count(); ++e) g.edges.push_back({parent_[static_cast<std::size_t>(e)], e + 1});
  for (int l : legs_.elements()) g.legs.push_back({l, legVertex_[static_cast<std::size_t>(l)]});
  return g;
}

std::strong_ordering operator<=>(const MarkedTree& a, const MarkedTree& b) {
  if (auto c = a.legs_.bits() <=> b.legs_.bits(); c != 0) return c;
  if (auto c = a.splits_.size() <=> b.splits_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.splits_.begin(), a.splits_.end(), b.splits_.begin(),
                                                b.splits_.end());
}

MetricTree::MetricTree(MarkedTree tree, std::vector<Integer> lengths)
    : tree_(std::move(tree)), lengths_(std::move(lengths)) {
  if (static_cast<int>(lengths_.size()) != tree_.edge_count())
    fail(ErrorKind::Structural, "length count does not match edge count");
  for (const Integer& x : lengths_)
    if (x <= 0) fail(ErrorKind::Domain, "edge lengths must be positive");
}

MetricTree MetricTree::from_split_lengths(int n, std::vector<std::pair<LegSet, Integer>> edges) {
  return from_split_lengths(LegSet::range(n), std::move(edges));
}

MetricTree MetricTree::from_split_lengths(LegSet legs, std::vector<std::pair<LegSet, Integer>> edges) {
  std::vector<LegSet> s;
  for (auto& [a, len] : edges) s.push_back(a);
  MarkedTree t = MarkedTree::from_splits(legs, s);
  std::vector<Integer> lengths(edges.size());
  for (auto& [a, len] : edges) lengths[static_cast<std::size_t>(t.edge_of(a))] = len;
  return MetricTree(std::move(t), std::move(lengths));
}

Integer MetricTree::leg_distance(int a, int b) const {
  Integer d = 0;
  for (int e : tree_.path_edges(a, b)) d += length(e);
  return d;
}

std::strong_ordering operator<=>(const MetricTree& a, const MetricTree& b) {
  if (auto c = a.tree_ <=> b.tree_; c != 0) return c;
  for (std::size_t x = 0; x < a.lengths_.size(); ++x) {
    if (a.lengths_[x] < b.lengths_[x]) return std::strong_ordering::less;
    if (b.lengths_[x] < a.lengths_[x]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

const std::vector<LegSet>& splits(const MarkedTree& tree) { return tree.splits(); }

MarkedTree contract_edge(const MarkedTree& tree, int edge) {
  std::vector<LegSet> s = tree.splits();
  if (edge < 0 || edge >= tree.edge_count()) fail(ErrorKind::Precondition, "unknown edge " + str(edge));
  s.erase(s.begin() + edge);
  return MarkedTree::from_splits(tree.legs(), std::move(s));
}

MarkedTree insert_edge(const MarkedTree& tree, int vertex, std::span<const LegSet> side1) {
  std::vector<Branch> bs = tree.branches(vertex);
  LegSet joined;
  for (LegSet part : side1) {
    bool found = std::any_of(bs.begin(), bs.end(), [&](const Branch& b) { return b.legs == part; });
    if (!found) fail(ErrorKind::Precondition, part.to_string() + " is not a branch at vertex " + str(vertex));
    if (joined.meets(part)) fail(ErrorKind::Precondition, "repeated branch in partition");
    joined = joined | part;
  }
  const std::size_t k1 = side1.size();
  if (k1 < 2 || bs.size() - k1 < 2)
    fail(ErrorKind::Precondition, "edge insertion needs at least two branches on each side");
  std::vector<LegSet> s = tree.splits();
  s.push_back(joined);
  return MarkedTree::from_splits(tree.legs(), std::move(s));
}

std::vector<Branch> branches(const MarkedTree& tree, int vertex) { return tree.branches(vertex); }

MarkedTree forgetful(const MarkedTree& tree, LegSet s) {
  if (!s.subset_of(tree.legs())) fail(ErrorKind::Precondition, "forgetful set is not a subset of the legs");
  if (s.size() < 3) fail(ErrorKind::Precondition, "forgetful map needs |S| >= 3");
  std::vector<LegSet> out;
  for (LegSet a : tree.splits()) {
    LegSet in = a & s;
    if (in.size() >= 2 && (s - a).size() >= 2) out.push_back(in);
  }
  MarkedTree probe = MarkedTree::star(s);
  for (LegSet& a : out) a = probe.normalize(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return MarkedTree::from_splits(s, std::move(out));
}

MetricTree forgetful_metric(const MetricTree& gamma, LegSet s) {
  const MarkedTree& tree = gamma.tree();
  if (!s.subset_of(tree.legs())) fail(ErrorKind::Precondition, "forgetful set is not a subset of the legs");
  if (s.size() < 3) fail(ErrorKind::Precondition, "forgetful map needs |S| >= 3");
  MarkedTree probe = MarkedTree::star(s);
  std::map<LegSet, Integer> acc;
  for (int e = 0; e < tree.edge_count(); ++e) {
    LegSet a = tree.split(e);
    LegSet in = a & s;
    if (in.size() >= 2 && (s - a).size() >= 2) acc[probe.normalize(in)] += gamma.length(e);
  }
  std::vector<std::pair<LegSet, Integer>> edges(acc.begin(), acc.end());
  return MetricTree::from_split_lengths(s, std::move(edges));
}

Integer hull_distance(const MetricTree& gamma, int i, int j, int l) {
  if (i == j || l == i || l == j) fail(ErrorKind::Precondition, "hull_distance needs distinct i, j and l not in {i,j}");
  const MarkedTree& t = gamma.tree();
  for (int x : {i, j, l})
    if (!t.legs().contains(x)) fail(ErrorKind::Precondition, "unknown leg " + str(x));
  Integer d = 0;
  LegSet far = LegSet{j, l};
  for (int e = 0; e < t.edge_count(); ++e)
    if (t.separates(e, LegSet::single(i), far)) d += gamma.length(e);
  return d;
}

int shortest_edge(const MetricTree& gamma) {
  const auto& len = gamma.lengths();
  if (len.empty()) fail(ErrorKind::Precondition, "tree has no edges");
  std::size_t best = 0;
  bool tie = false;
  for (std::size_t e = 1; e < len.size(); ++e) {
    if (len[e] < len[best]) {
      best = e;
      tie = false;
    } else if (len[e] == len[best]) {
      tie = true;
    }
  }
  if (tie) fail(ErrorKind::Ambiguity, "shortest edge is not unique (length " + len[best].str() + ")");
  return static_cast<int>(best);
}

std::vector<MarkedTree> enumerate_trees(LegSet legs, int r) {
  const int n = legs.size();
  if (n < 3) fail(ErrorKind::Precondition, "need at least 3 legs");
  if (r < 0 || r > n - 3) return {};
  LegSet rest = legs - LegSet::single(legs.min());
  std::vector<LegSet> candidates;
  for (std::uint64_t sub = rest.bits();; sub = (sub - 1) & rest.bits()) {
    LegSet a(sub);
    if (a.size() >= 2 && a.size() <= n - 2) candidates.push_back(a);
    if (sub == 0) break;
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<MarkedTree> out;
  std::vector<LegSet> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(chosen.size()) == r) {
      out.push_back(MarkedTree::from_splits(legs, chosen));
      return;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      bool ok = std::all_of(chosen.begin(), chosen.end(),
                            [&](LegSet s) { return compatible(s, candidates[c], legs); });
      if (!ok) continue;
      chosen.push_back(candidates[c]);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MarkedTree> maximal_refinements(const MarkedTree& tree) {
  std::set<MarkedTree> found;
  std::set<MarkedTree> visited;
  std::function<void(const MarkedTree&)> rec = [&](const MarkedTree& t) {
    if (!visited.insert(t).second) return;
    int v = -1;
    std::vector<Branch> bs;
    for (int x = 0; x < t.vertex_count(); ++x) {
      bs = t.branches(x);
      if (bs.size() > 3) {
        v = x;
        break;
      }
    }
    if (v < 0) {
      found.insert(t);
      return;
    }
    // B1 always holds branch 0, so each unordered partition appears once.
    const std::size_t m = bs.size();
    for (std::uint64_t mask = 0; mask < (1ULL << (m - 1)); ++mask) {
      std::vector<LegSet> side1{bs[0].legs};
      for (std::size_t b = 1; b < m; ++b)
        if ((mask >> (b - 1)) & 1ULL) side1.push_back(bs[b].legs);
      if (side1.size() < 2 || m - side1.size() < 2) continue;
      rec(insert_edge(t, v, side1));
    }
  };
  rec(tree);
  return {found.begin(), found.end()};
}

}  // namespace psifw::trees
