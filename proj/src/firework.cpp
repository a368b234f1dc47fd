#include "psifw/firework.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

namespace psifw::firework {

namespace {

std::string str(int x) { return std::to_string(x); }

std::vector<int> ancestors(const MarkedTree& t, int v) {
  std::vector<int> out{v};
  while (v != 0) {
    v = t.parent_vertex(v - 1);
    out.push_back(v);
  }
  return out;
}

std::vector<int> vertex_path(const MarkedTree& t, int a, int b) {
  std::vector<int> up = ancestors(t, a);
  std::vector<int> down = ancestors(t, b);
  while (up.size() >= 2 && down.size() >= 2 && up[up.size() - 2] == down[down.size() - 2]) {
    up.pop_back();
    down.pop_back();
  }
  // up and down now end at the common ancestor
  down.pop_back();
  std::reverse(down.begin(), down.end());
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

// Edges separating {i,l} from {k,j}.
std::vector<int> designated_path(const MarkedTree& t, const PsiSpec& s, int k, int l) {
  std::vector<int> out;
  LegSet a{s.i, l};
  LegSet b{k, s.j};
  for (int e = 0; e < t.edge_count(); ++e)
    if (t.separates(e, a, b)) out.push_back(e);
  return out;
}

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

Integer ceil_half(const Integer& x) { return (x + 1) / 2; }

}  // namespace

std::vector<PsiSpec> make_specs(int n, const Integer& B, const std::vector<PsiClass>& classes) {
  std::vector<PsiSpec> out;
  for (std::size_t q = 0; q < classes.size(); ++q)
    out.push_back({n, classes[q].S, classes[q].i, classes[q].j, static_cast<int>(q) + 1, B});
  validate_specs(n, out);
  return out;
}

void validate_specs(int n, std::span<const PsiSpec> specs) {
  if (static_cast<int>(specs.size()) > n - 3) fail(ErrorKind::Precondition, "at most n-3 classes allowed");
  for (std::size_t q = 0; q < specs.size(); ++q) {
    kapranov::validate(specs[q]);
    if (specs[q].n != n) fail(ErrorKind::Precondition, "class " + str(static_cast<int>(q) + 1) + " has a different n");
    if (specs[q].q != static_cast<int>(q) + 1) fail(ErrorKind::Precondition, "class levels must be 1,2,...");
    if (specs[q].B != specs.front().B) fail(ErrorKind::Precondition, "all classes must share one base B");
  }
}

Integer Cycle::degree() const {
  Integer d = 0;
  for (const auto& [t, c] : strata) d += c;
  return d;
}

bool check_star(const StarTuple& t, std::span<const PsiSpec> specs) {
  const int r = t.r();
  if (static_cast<int>(specs.size()) < r) fail(ErrorKind::Precondition, "fewer classes than tuple levels");
  if (t.tree.edge_count() != r || static_cast<int>(t.k.size()) != r || static_cast<int>(t.l.size()) != r)
    return false;
  std::vector<int> order;
  for (LegSet s : t.edgeOrder) {
    auto e = t.tree.find_edge(s);
    if (!e || contains(order, *e)) return false;
    order.push_back(*e);
  }
  for (int q = 0; q < r; ++q) {
    const PsiSpec& s = specs[static_cast<std::size_t>(q)];
    int k = t.k[static_cast<std::size_t>(q)];
    int l = t.l[static_cast<std::size_t>(q)];
    if (!(k < l)) return false;
    for (int x : {k, l})
      if (!s.S.contains(x) || x == s.i || x == s.j) return false;
    std::vector<int> p = designated_path(t.tree, s, k, l);
    if (p.empty() || !contains(p, order[static_cast<std::size_t>(q)])) return false;
    for (int earlier = 0; earlier < q; ++earlier)
      if (contains(p, order[static_cast<std::size_t>(earlier)])) return false;
  }
  return true;
}

PathSystem path_system(const StarTuple& t, std::span<const PsiSpec> specs) {
  if (!check_star(t, specs)) fail(ErrorKind::Precondition, "tuple does not satisfy condition (*)");
  const std::size_t r = t.edgeOrder.size();
  PathSystem ps{IntMatrix(r, r), std::vector<Integer>(r), {}};
  std::vector<int> order;
  for (LegSet s : t.edgeOrder) order.push_back(t.tree.edge_of(s));
  for (std::size_t q = 0; q < r; ++q) {
    std::vector<int> p = designated_path(t.tree, specs[q], t.k[q], t.l[q]);
    for (std::size_t c = 0; c < r; ++c) ps.A(q, c) = contains(p, order[c]) ? 1 : 0;
    ps.L[q] = (t.l[q] - t.k[q]) * specs[q].scale();
  }
  ps.y = linalg::solve_unit_upper_triangular(ps.A, ps.L);
  const int n = specs.empty() ? 0 : specs.front().n;
  for (std::size_t q = 0; q < r; ++q) {
    Integer sc = specs[q].scale();
    if (ps.y[q] < ceil_half(sc) || ps.y[q] > n * sc)
      fail(ErrorKind::Inconsistency, "edge length y_" + str(static_cast<int>(q) + 1) + " = " + ps.y[q].str() +
                                         " outside [" + ceil_half(sc).str() + ", " + Integer(n * sc).str() + "]");
    if (q > 0 && !(ps.y[q - 1] > ps.y[q]))
      fail(ErrorKind::Inconsistency, "edge lengths are not strictly decreasing");
  }
  return ps;
}

MetricTree realize(const StarTuple& t, std::span<const PsiSpec> specs) {
  PathSystem ps = path_system(t, specs);
  std::vector<Integer> lengths(t.edgeOrder.size());
  for (std::size_t q = 0; q < t.edgeOrder.size(); ++q)
    lengths[static_cast<std::size_t>(t.tree.edge_of(t.edgeOrder[q]))] = ps.y[q];
  MetricTree m(t.tree, std::move(lengths));
  for (std::size_t q = 0; q < t.edgeOrder.size(); ++q) {
    Integer total = 0;
    for (int e : designated_path(t.tree, specs[q], t.k[q], t.l[q])) total += m.length(e);
    if (total != ps.L[q]) fail(ErrorKind::Inconsistency, "realized path length differs from L");
  }
  return m;
}

std::optional<InsertionSite> insertion_site(const MetricTree& gamma, const PsiSpec& spec) {
  kapranov::validate(spec);
  const MarkedTree& t = gamma.tree();
  if (!spec.S.subset_of(t.legs())) fail(ErrorKind::Precondition, "S is not a subset of the tree's legs");
  std::vector<int> path = vertex_path(t, t.leg_vertex(spec.i), t.leg_vertex(spec.j));
  for (int v : path) {
    std::vector<Branch> bs = t.branches(v);
    int meeting = 0;
    for (const Branch& b : bs)
      if (b.legs.meets(spec.S)) ++meeting;
    if (meeting < 3) continue;
    auto find = [&](int leg) {
      return *std::find_if(bs.begin(), bs.end(), [&](const Branch& b) { return b.legs.contains(leg); });
    };
    InsertionSite site;
    site.vertex = v;
    site.I = find(spec.i);
    site.J = find(spec.j);
    if (site.I == site.J) return std::nullopt;
    LegSet rest = spec.S - site.I.legs - site.J.legs;
    site.k = rest.min();
    site.K = find(site.k);
    return site;
  }
  fail(ErrorKind::Inconsistency, "no S-stable vertex on the path from i to j");
}

std::vector<FireworkPoint> allowable_insertions(const FireworkPoint& point, std::span<const PsiSpec> specs) {
  const int r = point.tuple.r();
  if (static_cast<int>(specs.size()) <= r) fail(ErrorKind::Precondition, "no class for level r+1");
  const PsiSpec& spec = specs[static_cast<std::size_t>(r)];
  auto site = insertion_site(point.metric, spec);
  if (!site) return {};
  const MarkedTree& t = point.metric.tree();
  std::vector<Branch> free;
  for (const Branch& b : t.branches(site->vertex))
    if (b != site->I && b != site->J && b != site->K) free.push_back(b);
  std::span<const PsiSpec> upto = specs.first(static_cast<std::size_t>(r) + 1);
  std::vector<FireworkPoint> out;
  for (std::uint64_t mask = 0; mask < (1ULL << free.size()); ++mask) {
    std::vector<LegSet> side1{site->I.legs};
    LegSet marked;
    for (std::size_t b = 0; b < free.size(); ++b)
      if ((mask >> b) & 1ULL) {
        side1.push_back(free[b].legs);
        marked = marked | free[b].legs;
      }
    marked = marked & spec.S;
    if (marked.empty()) continue;
    StarTuple child = point.tuple;
    child.tree = trees::insert_edge(t, site->vertex, side1);
    LegSet joined;
    for (LegSet s : side1) joined = joined | s;
    child.edgeOrder.push_back(child.tree.normalize(joined));
    child.k.push_back(site->k);
    child.l.push_back(marked.min());
    if (!check_star(child, upto)) fail(ErrorKind::Inconsistency, "inserted tuple violates condition (*)");
    FireworkPoint p{realize(child, upto), std::move(child)};
    for (std::size_t q = 0; q < upto.size(); ++q) {
      kapranov::MinProfile prof = kapranov::min_profile(p.metric, upto[q]);
      std::vector<int> want{p.tuple.k[q], p.tuple.l[q]};
      if (prof.argmins != want)
        fail(ErrorKind::Inconsistency, "inserted tree fails re-verification at level " + str(static_cast<int>(q) + 1));
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const FireworkPoint& a, const FireworkPoint& b) { return a.metric < b.metric; });
  return out;
}

Integer contraction_bound(int n, const Integer& B, int childLevel) {
  int e = n - 3 - childLevel;
  if (e < 0) fail(ErrorKind::Precondition, "child level exceeds n-3");
  return n * ipow(2, static_cast<unsigned>(n)) * ipow(B, static_cast<unsigned>(e));
}

FireworkPoint contract_shortest(const FireworkPoint& child, std::span<const PsiSpec> specs) {
  const int r1 = child.tuple.r();
  if (r1 < 1) fail(ErrorKind::Precondition, "nothing to contract");
  const MarkedTree& t = child.metric.tree();
  int shortest = trees::shortest_edge(child.metric);
  if (shortest != t.edge_of(child.tuple.edgeOrder.back()))
    fail(ErrorKind::Inconsistency, "shortest edge is not the last created edge");
  StarTuple parent = child.tuple;
  parent.edgeOrder.pop_back();
  parent.k.pop_back();
  parent.l.pop_back();
  parent.tree = trees::contract_edge(t, shortest);
  std::span<const PsiSpec> upto = specs.first(static_cast<std::size_t>(r1) - 1);
  FireworkPoint out{realize(parent, upto), std::move(parent)};
  const int n = t.n();
  const Integer bound = contraction_bound(n, specs.front().B, r1);
  for (LegSet s : out.tuple.edgeOrder) {
    Integer delta = abs(out.metric.length_of(s) - child.metric.length_of(s));
    if (delta >= bound)
      fail(ErrorKind::Inconsistency, "length change " + delta.str() + " breaks the contraction bound " + bound.str());
  }
  return out;
}

void assert_structure(const FireworkPoint& p, std::span<const PsiSpec> specs) {
  const int r = p.tuple.r();
  const MarkedTree& t = p.metric.tree();
  if (t.edge_count() != r) fail(ErrorKind::Inconsistency, "point at level " + str(r) + " has wrong edge count");
  if (!(p.tuple.tree == t)) fail(ErrorKind::Inconsistency, "tuple tree differs from metric tree");
  std::span<const PsiSpec> upto = specs.first(static_cast<std::size_t>(r));
  if (!check_star(p.tuple, upto)) fail(ErrorKind::Inconsistency, "point violates condition (*)");
  const int n = t.n();
  for (int q = 0; q < r; ++q) {
    const Integer& len = p.metric.length_of(p.tuple.edgeOrder[static_cast<std::size_t>(q)]);
    Integer sc = upto[static_cast<std::size_t>(q)].scale();
    if (len < ceil_half(sc) || len > n * sc) fail(ErrorKind::Inconsistency, "edge length outside the structural bounds");
    if (q > 0 && !(p.metric.length_of(p.tuple.edgeOrder[static_cast<std::size_t>(q) - 1]) > len))
      fail(ErrorKind::Inconsistency, "edge lengths are not strictly decreasing");
    kapranov::MinProfile prof = kapranov::min_profile(p.metric, upto[static_cast<std::size_t>(q)]);
    if (prof.argmins.size() != 2) fail(ErrorKind::Inconsistency, "minimum not achieved exactly twice");
    std::vector<int> want{p.tuple.k[static_cast<std::size_t>(q)], p.tuple.l[static_cast<std::size_t>(q)]};
    if (prof.argmins != want) fail(ErrorKind::Inconsistency, "minimizers differ from (k_q, l_q)");
  }
  if (!(realize(p.tuple, upto) == p.metric)) fail(ErrorKind::Inconsistency, "metric differs from its path system");
}

FireworkPoint cone_point(int n) {
  MarkedTree star = MarkedTree::star(n);
  return {MetricTree(star, {}), StarTuple{star, {}, {}, {}}};
}

std::vector<FireworkLevel> firework_run(int n, std::span<const PsiSpec> specs, const RunOptions& options) {
  validate_specs(n, specs);
  int top = static_cast<int>(specs.size());
  if (options.maxLevel) top = std::min(top, std::max(0, *options.maxLevel));
  std::vector<FireworkLevel> levels;
  levels.push_back({0, {cone_point(n)}});
  for (int r = 0; r < top; ++r) {
    const std::vector<FireworkPoint>& parents = levels.back().points;
    std::vector<std::vector<FireworkPoint>> children(parents.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex errorMutex;
    auto worker = [&] {
      for (std::size_t x = next++; x < parents.size(); x = next++) {
        try {
          children[x] = allowable_insertions(parents[x], specs);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(parents.size())));
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    FireworkLevel level{r + 1, {}};
    for (auto& c : children)
      for (auto& p : c) level.points.push_back(std::move(p));
    std::sort(level.points.begin(), level.points.end(),
              [](const FireworkPoint& a, const FireworkPoint& b) { return a.metric < b.metric; });
    for (std::size_t x = 1; x < level.points.size(); ++x)
      if (level.points[x - 1].metric.tree() == level.points[x].metric.tree())
        fail(ErrorKind::Inconsistency, "two points of FW_" + str(r + 1) + " share a combinatorial type");
    for (const FireworkPoint& p : level.points) assert_structure(p, specs);
    levels.push_back(std::move(level));
  }
  return levels;
}

Cycle limit_cycle(const FireworkLevel& level) {
  Cycle c;
  for (const FireworkPoint& p : level.points) c.strata[p.metric.tree()] += 1;
  return c;
}

std::vector<MetricTree> brute_force_fw(int n, std::span<const PsiSpec> specs, int r) {
  if (n > 7 || r > 3) fail(ErrorKind::Guard, "brute force is limited to n <= 7 and r <= 3");
  if (r < 0 || r > static_cast<int>(specs.size())) fail(ErrorKind::Precondition, "level out of range");
  validate_specs(n, specs);
  std::span<const PsiSpec> upto = specs.first(static_cast<std::size_t>(r));
  std::set<MetricTree> found;
  for (const MarkedTree& t : trees::enumerate_trees(LegSet::range(n), r)) {
    StarTuple tup{t, {}, {}, {}};
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    std::function<void(int)> rec = [&](int q) {
      if (q == r) {
        MetricTree m = realize(tup, upto);
        for (const PsiSpec& s : upto)
          if (!kapranov::in_hypersurface(m, s)) return;
        found.insert(std::move(m));
        return;
      }
      const PsiSpec& s = upto[static_cast<std::size_t>(q)];
      std::vector<int> others = s.others();
      for (int e = 0; e < r; ++e) {
        if (used[static_cast<std::size_t>(e)]) continue;
        for (std::size_t a = 0; a < others.size(); ++a)
          for (std::size_t b = a + 1; b < others.size(); ++b) {
            std::vector<int> p = designated_path(t, s, others[a], others[b]);
            if (!contains(p, e)) continue;
            bool clean = true;
            for (LegSet prev : tup.edgeOrder)
              if (contains(p, t.edge_of(prev))) clean = false;
            if (!clean) continue;
            used[static_cast<std::size_t>(e)] = true;
            tup.edgeOrder.push_back(t.split(e));
            tup.k.push_back(others[a]);
            tup.l.push_back(others[b]);
            rec(q + 1);
            tup.edgeOrder.pop_back();
            tup.k.pop_back();
            tup.l.pop_back();
            used[static_cast<std::size_t>(e)] = false;
          }
      }
    };
    rec(0);
  }
  return {found.begin(), found.end()};
}

IntMatrix certificate_matrix(const FireworkPoint& point, const MarkedTree& maximal, std::span<const PsiSpec> specs) {
  const MarkedTree& t = point.metric.tree();
  const int n = t.n();
  if (maximal.legs() != t.legs() || maximal.edge_count() != n - 3)
    fail(ErrorKind::Precondition, "refinement mismatch: target is not a maximal tree on the same legs");
  for (LegSet s : t.splits())
    if (!maximal.find_edge(s)) fail(ErrorKind::Precondition, "refinement mismatch: split " + s.to_string() + " missing");
  const std::size_t r = point.tuple.edgeOrder.size();
  if (specs.size() < r) fail(ErrorKind::Precondition, "fewer classes than tuple levels");
  std::vector<int> cols;
  for (LegSet s : point.tuple.edgeOrder) cols.push_back(maximal.edge_of(s));
  for (int e = 0; e < maximal.edge_count(); ++e)
    if (!t.find_edge(maximal.split(e))) cols.push_back(e);
  const std::size_t m = cols.size();
  IntMatrix out(m, m);
  for (std::size_t q = 0; q < r; ++q) {
    std::vector<int> p = designated_path(maximal, specs[q], point.tuple.k[q], point.tuple.l[q]);
    for (std::size_t c = 0; c < m; ++c) out(q, c) = contains(p, cols[c]) ? 1 : 0;
  }
  for (std::size_t q = r; q < m; ++q) out(q, q) = 1;
  return out;
}

bool certify_matrix(const IntMatrix& m, const IntMatrix& a) {
  if (a.rows() > m.rows()) return false;
  for (std::size_t x = 0; x < a.rows(); ++x)
    for (std::size_t y = 0; y < a.cols(); ++y)
      if (m(x, y) != a(x, y)) return false;
  return linalg::determinant(m) == 1;
}

bool transversality_certificate(const FireworkPoint& point, const MarkedTree& maximal, std::span<const PsiSpec> specs) {
  IntMatrix m = certificate_matrix(point, maximal, specs);
  PathSystem ps = path_system(point.tuple, specs.first(point.tuple.edgeOrder.size()));
  return certify_matrix(m, ps.A);
}

Integer multinomial(int total, const std::vector<int>& parts) {
  int sum = 0;
  for (int p : parts) {
    if (p < 0) fail(ErrorKind::Precondition, "negative multinomial part");
    sum += p;
  }
  if (sum != total) fail(ErrorKind::Precondition, "multinomial parts do not sum to the total");
  Integer out = 1;
  int running = 0;
  for (int p : parts) {
    for (int x = 1; x <= p; ++x) {
      ++running;
      out = out * running / x;
    }
  }
  return out;
}

}  // namespace psifw::firework
