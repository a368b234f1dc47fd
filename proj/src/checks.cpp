#include "psifw/checks.hpp"

#include "psifw/tropcycles.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace psifw::checks {

using firework::FireworkLevel;
using firework::FireworkPoint;
using kapranov::PsiSpec;
using trees::MarkedTree;
using trees::MetricTree;

namespace {

struct Collector {
  std::vector<std::string> failures;
  std::ostringstream notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t x = 0; x < xs.size(); ++x) out += (x ? sep : "") + xs[x];
  return out;
}

template <class T>
std::string list(const std::vector<T>& xs) {
  std::ostringstream os;
  os << "(";
  for (std::size_t x = 0; x < xs.size(); ++x) os << (x ? "," : "") << xs[x];
  os << ")";
  return os.str();
}

// Runs body, catching library errors into the failure list.
CheckResult timed(int id, std::string name, const std::function<void(Collector&)>& body) {
  auto start = std::chrono::steady_clock::now();
  Collector c;
  try {
    body(c);
  } catch (const Error& e) {
    c.failures.push_back(std::string(error_kind_name(e.kind())) + " error: " + e.what());
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.passed = c.failures.empty();
  std::string notes = c.notes.str();
  r.detail = r.passed ? notes : join(c.failures, "; ") + (notes.empty() ? "" : " | " + notes);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Integer> profile_values(const MetricTree& m, const PsiSpec& s) {
  std::vector<Integer> out;
  for (const auto& [l, v] : kapranov::min_profile(m, s).values) out.push_back(v);
  return out;
}

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

trop::ValuedPolynomial2D poly(std::initializer_list<std::array<int, 3>> terms) {
  trop::ValuedPolynomial2D f;
  for (auto [a, b, v] : terms) f.terms.push_back({{a, b}, v});
  return f;
}

linalg::IntVector iv(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

// Portable draws: mt19937_64 output is fixed by the standard, distributions are not.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  int below(int k) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(k)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 rng_;
};

std::vector<PsiSpec> random_specs(Draw& d, int n, int count) {
  std::vector<firework::PsiClass> classes;
  for (int q = 0; q < count; ++q) {
    LegSet s;
    while (s.size() < 3) {
      s = LegSet();
      for (int l = 1; l <= n; ++l)
        if (d.below(3) != 0) s.insert(l);
    }
    std::vector<int> e = s.elements();
    int i = e[static_cast<std::size_t>(d.below(static_cast<int>(e.size())))];
    int j = i;
    while (j == i) j = e[static_cast<std::size_t>(d.below(static_cast<int>(e.size())))];
    classes.push_back({s, i, j});
  }
  return firework::make_specs(n, kapranov::default_base(n), classes);
}

std::string describe(const std::vector<PsiSpec>& specs) {
  std::ostringstream os;
  os << "n=" << (specs.empty() ? 0 : specs[0].n) << " [";
  for (std::size_t q = 0; q < specs.size(); ++q)
    os << (q ? " " : "") << specs[q].S.to_string() << ":" << specs[q].i << "," << specs[q].j;
  os << "]";
  return os.str();
}

}  // namespace

std::vector<PsiSpec> worked_example_specs() {
  return firework::make_specs(6, 10, {{LegSet::range(6), 2, 4}, {LegSet{1, 3, 4, 6}, 3, 1}, {LegSet{1, 2, 4, 5, 6}, 5, 4}});
}

CheckResult worked_example() {
  return timed(1, "worked example n=6, B=10", [](Collector& c) {
    auto specs = worked_example_specs();
    auto levels = firework::firework_run(6, specs);
    c.expect(levels.size() == 4, "expected levels 0..3");
    const FireworkLevel& l1 = levels.at(1);
    c.expect(l1.points.size() == 7, "|FW_1| = " + std::to_string(l1.points.size()) + ", expected 7");
    std::vector<Integer> lens;
    for (const auto& p : l1.points) lens.push_back(p.metric.lengths().front());
    std::sort(lens.begin(), lens.end());
    c.expect(lens == ints({200, 200, 200, 200, 400, 400, 500}), "FW_1 lengths " + list(lens));

    // first level-1 tree: split {2,3} of length 200
    MetricTree first = MetricTree::from_split_lengths(6, {{LegSet{2, 3}, 200}});
    auto parent = std::find_if(l1.points.begin(), l1.points.end(), [&](const auto& p) { return p.metric == first; });
    c.expect(parent != l1.points.end(), "tree ({2,3}:200) missing from FW_1");
    if (parent != l1.points.end()) {
      std::set<MetricTree> kids;
      for (const auto& p : levels.at(2).points)
        if (firework::contract_shortest(p, specs).metric == first) kids.insert(p.metric);
      std::set<MetricTree> expected{
          MetricTree::from_split_lengths(6, {{LegSet{2, 3}, 180}, {LegSet{2, 3, 6}, 20}}),
          MetricTree::from_split_lengths(6, {{LegSet{2, 3}, 180}, {LegSet{2, 3, 5, 6}, 20}})};
      c.expect(kids == expected, "level-2 descendants differ from T1, T2");
    }

    struct Final {
      std::vector<std::pair<LegSet, Integer>> edges;
      std::vector<std::vector<Integer>> profiles;
    };
    std::vector<Final> finals{
        {{{LegSet{2, 3}, 180}, {LegSet{2, 3, 6}, 19}, {LegSet{2, 3, 5, 6}, 1}},
         {ints({300, 300, 699, 780}), ints({60, 60}), ints({2, 2, 6})}},
        {{{LegSet{2, 3}, 180}, {LegSet{2, 3, 5, 6}, 20}, {LegSet{5, 6}, 4}},
         {ints({300, 300, 680, 780}), ints({60, 60}), ints({25, 6, 6})}}};
    for (std::size_t f = 0; f < finals.size(); ++f) {
      MetricTree m = MetricTree::from_split_lengths(6, finals[f].edges);
      const auto& l3 = levels.at(3).points;
      bool found = std::any_of(l3.begin(), l3.end(), [&](const auto& p) { return p.metric == m; });
      c.expect(found, "final tree " + std::to_string(f + 1) + " missing from FW_3");
      for (std::size_t q = 0; q < 3; ++q) {
        auto got = profile_values(m, specs[q]);
        c.expect(got == finals[f].profiles[q],
                 "final tree " + std::to_string(f + 1) + " q=" + std::to_string(q + 1) + " profile " + list(got));
      }
    }
    c.notes << "|FW_1|=" << l1.points.size() << " lengths " << list(lens) << ", |FW_3|=" << levels.at(3).points.size();
  });
}

std::vector<std::vector<int>> exponent_vectors(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      a[static_cast<std::size_t>(pos)] = left;
      out.push_back(a);
      return;
    }
    for (int v = left; v >= 0; --v) {
      a[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

std::vector<DegreeLawCase> degree_law_cases(int n, unsigned threads, std::size_t stride) {
  std::vector<DegreeLawCase> out;
  auto vectors = exponent_vectors(n, n - 3);
  for (std::size_t v = 0; v < vectors.size(); v += std::max<std::size_t>(1, stride)) {
    const auto& a = vectors[v];
    for (int choice = 0; choice < 2; ++choice) {
      DegreeLawCase dc;
      dc.n = n;
      dc.exponents = a;
      std::vector<firework::PsiClass> classes;
      for (int i = 1; i <= n; ++i)
        for (int m = 0; m < a[static_cast<std::size_t>(i - 1)]; ++m) {
          int j = choice == 0 ? (i == 1 ? 2 : 1) : (i == n ? n - 1 : n);
          classes.push_back({LegSet::range(n), i, j});
          dc.js.push_back(j);
        }
      auto specs = firework::make_specs(n, kapranov::default_base(n), classes);
      auto levels = firework::firework_run(n, specs, {std::nullopt, threads});
      dc.expected = firework::multinomial(n - 3, a);
      dc.actual = levels.back().points.size();
      for (const auto& p : levels.back().points) dc.strata.push_back(p.metric.tree());
      std::sort(dc.strata.begin(), dc.strata.end());
      out.push_back(std::move(dc));
    }
  }
  return out;
}

CheckResult degree_law(unsigned threads) {
  return timed(2, "degree law n=5,6 (+ n=7 sample)", [threads](Collector& c) {
    std::size_t runs = 0, vectors = 0, sameStrata = 0;
    // every vector for n = 5, 6; every 15th for n = 7
    for (auto [n, stride] : {std::pair{5, 1}, std::pair{6, 1}, std::pair{7, 15}}) {
      auto cases = degree_law_cases(n, threads, static_cast<std::size_t>(stride));
      for (std::size_t x = 0; x < cases.size(); ++x) {
        const auto& dc = cases[x];
        ++runs;
        c.expect(Integer(dc.actual) == dc.expected, "n=" + std::to_string(n) + " a=" + list(dc.exponents) + " j=" +
                                                        list(dc.js) + ": " + std::to_string(dc.actual) +
                                                        " points, expected " + dc.expected.str());
        if (x % 2 == 1) {
          ++vectors;
          if (cases[x - 1].strata == dc.strata) ++sameStrata;
        }
      }
    }
    c.notes << runs << " runs over " << vectors << " exponent vectors; strata sets equal across j choices for "
            << sameStrata << "/" << vectors;
  });
}

CheckResult bezout() {
  return timed(3, "Bezout stable intersection", [](Collector& c) {
    auto x1 = trop::trop_curve(poly({{2, 2, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 0}}));
    auto x2 = trop::trop_curve(poly({{2, 1, 0}, {1, 2, 0}, {1, 0, 0}, {0, 1, 0}}));
    auto s = trop::stable_intersection_2d(x1, x2, trop::Point2{Rational(-1, 2), Rational(-1, 10)});
    std::vector<Integer> mults;
    for (const auto& p : s.points) mults.push_back(p.multiplicity);
    std::sort(mults.begin(), mults.end(), std::greater<>());
    c.expect(s.degree() == 10, "degree " + s.degree().str());
    c.expect(mults == ints({3, 3, 3, 1}), "multiplicities " + list(mults));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto g = trop::stable_intersection_2d(x1, x2, std::nullopt, seed);
      c.expect(g.degree() == 10, "generic seed " + std::to_string(seed) + " degree " + g.degree().str());
    }
    c.notes << "degree " << s.degree() << ", multiplicities " << list(mults);
  });
}

CheckResult new_multiplicity() {
  return timed(4, "degeneration local multiplicities", [](Collector& c) {
    using trop::WeightedFan;
    // stars at the three boundary points e1/2, e2, e3
    WeightedFan s1{3, {iv({1, 0, 0})}, {{{iv({0, 1, 0})}, 1}, {{iv({0, 0, 1})}, 1}, {{iv({-1, -1, -1})}, 1}}};
    WeightedFan x1{3, {}, {{{iv({-1, 2, 0})}, 1}, {{iv({-1, 0, 2})}, 1}, {{iv({1, -1, -1})}, 2}}};
    WeightedFan s2{3, {iv({0, 1, 0})}, {{{iv({1, 0, 0})}, 1}, {{iv({0, 0, 1})}, 1}, {{iv({-1, -1, -1})}, 1}}};
    WeightedFan x2{3, {}, {{{iv({1, -2, 0})}, 1}, {{iv({0, -1, 1})}, 1}, {{iv({-1, 3, -1})}, 1}}};
    WeightedFan s3{3, {iv({0, 0, 1})}, {{{iv({1, 0, 0})}, 1}, {{iv({0, 1, 0})}, 1}, {{iv({-1, -1, -1})}, 1}}};
    WeightedFan x3{3, {}, {{{iv({1, 0, -2})}, 1}, {{iv({0, 1, -1})}, 1}, {{iv({-1, -1, 3})}, 1}}};

    Integer zeta = trop::local_mult(s1, {iv({1, 0, 0})}, x1, 0);
    Integer zetaPrime = trop::local_mult(s1, {iv({1, 0, 0})}, x1, 2);
    c.expect(zeta == 2, "facet zeta gives " + zeta.str());
    c.expect(zetaPrime == 2, "facet zeta' gives " + zetaPrime.str());
    std::vector<Integer> coeffs{trop::local_mult(s1, {iv({1, 0, 0})}, x1), trop::local_mult(s2, {iv({0, 1, 0})}, x2),
                                trop::local_mult(s3, {iv({0, 0, 1})}, x3)};
    c.expect(coeffs == ints({2, 1, 1}), "limit cycle coefficients " + list(coeffs));
    c.notes << "zeta " << zeta << ", zeta' " << zetaPrime << ", coefficients " << list(coeffs);
  });
}

CheckResult p2_degeneration() {
  return timed(5, "P2 degeneration crossings", [](Collector& c) {
    auto curve = trop::trop_curve(poly({{3, 0, 0}, {1, 1, -2}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}}));
    c.expect(trop::check_balanced(curve), "curve is not balanced");
    auto crossings = trop::ray_crossings(curve, {{1, 0}, {0, 1}, {-1, -1}});
    c.expect(crossings == ints({1, 1, 1}), "crossings " + list(crossings));
    c.notes << "crossings " << list(crossings);
  });
}

namespace {

// insert/contract round trip over every stable tree with n <= 7
std::size_t round_trip_suite(Collector& c) {
  std::size_t cases = 0;
  for (int n = 4; n <= 7; ++n) {
    LegSet legs = LegSet::range(n);
    for (int r = 0; r <= n - 3; ++r) {
      for (const MarkedTree& t : trees::enumerate_trees(legs, r)) {
        for (int e = 0; e < t.edge_count(); ++e) {
          ++cases;
          LegSet x = t.split(e);
          MarkedTree merged = trees::contract_edge(t, e);
          bool ok = false;
          for (int v = 0; v < merged.vertex_count() && !ok; ++v) {
            std::vector<LegSet> side1, side2;
            for (const auto& b : merged.branches(v)) (b.legs.subset_of(x) ? side1 : side2).push_back(b.legs);
            LegSet u;
            for (LegSet s : side1) u = u | s;
            if (u != x || side1.size() < 2 || side2.size() < 2) continue;
            ok = trees::insert_edge(merged, v, side1) == t;
          }
          c.expect(ok, "contract/insert failed for edge " + x.to_string());
        }
        for (int v = 0; v < t.vertex_count(); ++v) {
          auto bs = t.branches(v);
          int m = static_cast<int>(bs.size());
          if (m < 4) continue;
          for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
            std::vector<LegSet> side1{bs[0].legs};
            LegSet u = bs[0].legs;
            for (int b = 1; b < m; ++b)
              if (mask >> (b - 1) & 1u) {
                side1.push_back(bs[static_cast<std::size_t>(b)].legs);
                u = u | bs[static_cast<std::size_t>(b)].legs;
              }
            int size1 = static_cast<int>(side1.size());
            if (size1 < 2 || m - size1 < 2) continue;
            ++cases;
            MarkedTree grown = trees::insert_edge(t, v, side1);
            c.expect(grown.edge_count() == t.edge_count() + 1 &&
                         trees::contract_edge(grown, grown.edge_of(u)) == t,
                     "insert/contract failed at " + u.to_string());
          }
        }
      }
    }
  }
  return cases;
}

struct FireworkStats {
  std::size_t configs = 0;
  std::size_t points = 0;
  std::size_t levelPairs = 0;
  std::size_t children = 0;
  std::size_t certificates = 0;
};

void check_point(Collector& c, const FireworkPoint& p, std::span<const PsiSpec> specs, int r, const std::string& where) {
  const auto& t = p.tuple;
  c.expect(p.metric.tree().edge_count() == r && t.r() == r, where + ": edge count");
  for (int q = 0; q < r; ++q) {
    const PsiSpec& s = specs[static_cast<std::size_t>(q)];
    Integer scale = s.scale();
    Integer len = p.metric.length_of(t.edgeOrder[static_cast<std::size_t>(q)]);
    c.expect((scale + 1) / 2 <= len && len <= s.n * scale, where + ": length bound at q=" + std::to_string(q + 1));
    if (q > 0) c.expect(len < p.metric.length_of(t.edgeOrder[static_cast<std::size_t>(q - 1)]), where + ": ordering");
    const MarkedTree& tree = p.metric.tree();
    LegSet a{s.i, t.l[static_cast<std::size_t>(q)]};
    LegSet b{t.k[static_cast<std::size_t>(q)], s.j};
    for (int q2 = 0; q2 <= q; ++q2) {
      bool on = tree.separates(tree.edge_of(t.edgeOrder[static_cast<std::size_t>(q2)]), a, b);
      c.expect(on == (q2 == q), where + ": path P_" + std::to_string(q + 1));
    }
    c.expect(kapranov::achieved_exactly_twice(p.metric, s), where + ": minimum not attained exactly twice");
  }
}

void firework_suite(Collector& c, const std::vector<PsiSpec>& specs, unsigned threads, FireworkStats& st) {
  int n = specs.front().n;
  std::string tag = describe(specs);
  auto levels = firework::firework_run(n, specs, {std::nullopt, threads});
  ++st.configs;
  Integer B = specs.front().B;
  for (std::size_t r = 0; r < levels.size(); ++r) {
    const auto& pts = levels[r].points;
    for (const auto& p : pts) {
      ++st.points;
      check_point(c, p, specs, static_cast<int>(r), tag);
      for (const MarkedTree& m : trees::maximal_refinements(p.metric.tree())) {
        ++st.certificates;
        c.expect(firework::transversality_certificate(p, m, specs), tag + ": certificate failed");
      }
    }
    std::set<MarkedTree> types;
    for (const auto& p : pts) types.insert(p.metric.tree());
    ++st.levelPairs;
    c.expect(types.size() == pts.size(), tag + ": FW_" + std::to_string(r) + " types not distinct");
    if (r == 0) continue;
    Integer bound = firework::contraction_bound(n, B, static_cast<int>(r));
    const auto& parents = levels[r - 1].points;
    for (const auto& child : pts) {
      ++st.children;
      FireworkPoint up = firework::contract_shortest(child, specs);
      auto hits = std::count_if(parents.begin(), parents.end(), [&](const auto& p) { return p.metric == up.metric; });
      c.expect(hits == 1, tag + ": contraction does not land on a unique parent");
      auto parent = std::find_if(parents.begin(), parents.end(), [&](const auto& p) { return p.metric == up.metric; });
      if (parent == parents.end()) continue;
      for (std::size_t q = 0; q < parent->tuple.edgeOrder.size(); ++q) {
        Integer diff = child.metric.length_of(child.tuple.edgeOrder[q]) - parent->metric.length_of(parent->tuple.edgeOrder[q]);
        if (diff < 0) diff = -diff;
        c.expect(diff < bound, tag + ": contraction bound");
      }
      auto again = firework::allowable_insertions(*parent, specs);
      bool back = std::any_of(again.begin(), again.end(), [&](const auto& p) { return p.metric == child.metric; });
      c.expect(back, tag + ": re-insertion does not regenerate the child");
    }
  }
}

std::size_t oracle_suite(Collector& c) {
  std::size_t comparisons = 0;
  Draw d(0x0a11c0de);
  auto compare = [&](const std::vector<PsiSpec>& specs, int upto) {
    int n = specs.front().n;
    auto levels = firework::firework_run(n, specs);
    for (int r = 0; r <= upto && r < static_cast<int>(levels.size()); ++r) {
      ++comparisons;
      auto bf = firework::brute_force_fw(n, specs, r);
      std::vector<MetricTree> fw;
      for (const auto& p : levels[static_cast<std::size_t>(r)].points) fw.push_back(p.metric);
      c.expect(bf == fw, describe(specs) + ": oracle differs at r=" + std::to_string(r));
    }
  };
  for (int x = 0; x < 20; ++x) {
    int n = d.between(5, 6);
    compare(random_specs(d, n, std::min(2, n - 3)), 2);
  }
  compare(worked_example_specs(), 3);
  return comparisons;
}

std::size_t balance_suite(Collector& c) {
  Draw d(0xba1a);
  for (int x = 0; x < 200; ++x) {
    trop::ValuedPolynomial2D f;
    std::set<std::pair<int, int>> seen;
    int want = d.between(2, 8);
    while (static_cast<int>(f.terms.size()) < want) {
      std::pair<int, int> e{d.below(5), d.below(5)};
      if (!seen.insert(e).second) continue;
      f.terms.push_back({{e.first, e.second}, d.between(-5, 5)});
    }
    c.expect(trop::check_balanced(trop::trop_curve(f)), "unbalanced curve for polynomial #" + std::to_string(x));
  }
  return 200;
}

std::size_t lattice_suite(Collector& c) {
  Draw d(0x1a77);
  std::size_t cases = 0;
  for (int dim : {2, 3}) {
    for (int x = 0; x < 500;) {
      std::vector<linalg::IntVector> rows;
      for (int a = 0; a < dim; ++a) {
        linalg::IntVector v;
        for (int b = 0; b < dim; ++b) v.push_back(d.between(-9, 9));
        rows.push_back(v);
      }
      Integer det = linalg::determinant(linalg::IntMatrix::from_rows(rows));
      if (det == 0) continue;
      ++x;
      ++cases;
      auto idx = linalg::lattice_index(linalg::Lattice::standard(static_cast<std::size_t>(dim)),
                                       linalg::Lattice::spanned_by(rows, static_cast<std::size_t>(dim)));
      c.expect(!idx.infinite() && *idx.value == (det < 0 ? Integer(-det) : det), "lattice index differs from |det|");
    }
  }
  return cases;
}

}  // namespace

CheckResult property_suites(unsigned threads) {
  return timed(6, "property suites", [threads](Collector& c) {
    std::size_t roundTrips = round_trip_suite(c);

    FireworkStats st;
    Draw d(0xf1e2);
    while (st.configs < 60 || st.points < 1000 || st.children < 1000) {
      int n = d.between(5, 7);
      firework_suite(c, random_specs(d, n, d.between(1, n - 3)), threads, st);
      if (st.configs > 2000) break;
    }
    std::size_t oracle = oracle_suite(c);
    std::size_t polys = balance_suite(c);
    std::size_t lattices = lattice_suite(c);

    c.expect(roundTrips >= 1000, "round trip suite too small");
    c.expect(st.points >= 1000 && st.children >= 1000 && st.certificates >= 1000, "firework suites too small");
    c.notes << "round trips " << roundTrips << ", configs " << st.configs << ", points " << st.points
            << ", parent/child pairs " << st.children << ", injectivity levels " << st.levelPairs << ", certificates "
            << st.certificates << ", oracle comparisons " << oracle << ", polynomials " << polys << ", lattices "
            << lattices;
  });
}

std::vector<CheckResult> run_all(unsigned threads) {
  return {worked_example(), degree_law(threads), bezout(), new_multiplicity(), p2_degeneration(),
          property_suites(threads)};
}

}  // namespace psifw::checks
