#include "psifw/tropcycles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace psifw::trop {

namespace {

using linalg::Lattice;

Rational q(const Integer& x) { return Rational(x); }

Integer det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec2 primitive2(const Integer& x, const Integer& y) {
  IntVector p = linalg::primitive({x, y});
  return {p[0], p[1]};
}

// Sign of eps-affine quantity a0 + eps*a1 for infinitesimal eps > 0.
// Returns 0 when both parts vanish.
int lex_sign(const Rational& a0, const Rational& a1) {
  if (a0 != 0) return a0 > 0 ? 1 : -1;
  if (a1 != 0) return a1 > 0 ? 1 : -1;
  return 0;
}

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
  SolveStatus status;
  std::vector<Rational> x;
};

// Solve sum_c x_c cols[c] = rhs over the rationals.
SolveResult solve(const std::vector<std::vector<Rational>>& cols, const std::vector<Rational>& rhs) {
  const std::size_t m = rhs.size();
  const std::size_t n = cols.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r];
    a[r][n] = rhs[r];
  }
  std::vector<std::size_t> pivotCol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[row][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[row][k];
    }
    pivotCol.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (a[r][n] != 0) return {SolveStatus::Inconsistent, {}};
  if (pivotCol.size() < n) return {SolveStatus::Underdetermined, {}};
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < pivotCol.size(); ++r) x[pivotCol[r]] = a[r][n] / a[r][pivotCol[r]];
  return {SolveStatus::Unique, x};
}

std::vector<Rational> to_rational(const IntVector& v) {
  std::vector<Rational> out;
  for (const Integer& x : v) out.push_back(q(x));
  return out;
}

Lattice lattice_of(const std::vector<IntVector>& gens, std::size_t dim) {
  if (gens.empty()) return {dim, linalg::IntMatrix(0, dim)};
  return Lattice::spanned_by(gens, dim);
}

std::size_t rank_of(const std::vector<IntVector>& gens, std::size_t dim) {
  if (gens.empty()) return 0;
  return linalg::rank(linalg::IntMatrix::from_rows(gens, dim));
}

// A cone given by free lineality directions plus nonnegative generators.
struct LocalCone {
  std::vector<IntVector> lineality;
  std::vector<IntVector> gens;

  std::vector<IntVector> all() const {
    std::vector<IntVector> out = lineality;
    out.insert(out.end(), gens.begin(), gens.end());
    return out;
  }
};

bool cone_contains(const LocalCone& c, const IntVector& x, std::size_t dim) {
  std::vector<IntVector> cols = c.all();
  if (rank_of(cols, dim) != cols.size())
    fail(ErrorKind::Domain, "only simplicial cones (independent generators) are supported");
  std::vector<std::vector<Rational>> rc;
  for (const IntVector& v : cols) rc.push_back(to_rational(v));
  SolveResult s = solve(rc, to_rational(x));
  if (s.status != SolveStatus::Unique) return s.status == SolveStatus::Underdetermined;
  for (std::size_t k = c.lineality.size(); k < cols.size(); ++k)
    if (s.x[k] < 0) return false;
  return true;
}

LocalCone local_cone(const WeightedFan& fan, std::size_t idx) {
  return {fan.lineality, fan.cones.at(idx).gens};
}

}  // namespace

void validate(const WeightedFan& fan) {
  if (fan.dim < 1 || fan.dim > kMaxFanDim)
    fail(ErrorKind::Domain, "fan dimension must lie in 1.." + std::to_string(kMaxFanDim));
  auto check = [&](const IntVector& v) {
    if (static_cast<int>(v.size()) != fan.dim) fail(ErrorKind::Structural, "generator has the wrong dimension");
  };
  for (const IntVector& v : fan.lineality) check(v);
  for (const FanCone& c : fan.cones) {
    if (c.weight < 1) fail(ErrorKind::Domain, "cone weights must be positive");
    for (const IntVector& v : c.gens) check(v);
  }
}

TropCurve2D TropCurve2D::scaled(const Integer& factor) const {
  TropCurve2D out = *this;
  for (CurveEdge& e : out.edges) e.weight *= factor;
  return out;
}

Point2 TropCurve2D::point_on(const CurveEdge& e, const Rational& s) const {
  const Point2& p = vertices.at(e.tail);
  return {p[0] + s * q(e.direction[0]), p[1] + s * q(e.direction[1])};
}

Rational TropCurve2D::edge_length(const CurveEdge& e) const {
  if (!e.head) fail(ErrorKind::Precondition, "rays have no finite length");
  const Point2& a = vertices.at(e.tail);
  const Point2& b = vertices.at(*e.head);
  std::size_t k = e.direction[0] != 0 ? 0 : 1;
  return (b[k] - a[k]) / q(e.direction[k]);
}

TropCurve2D TropCurve2D::fan(const std::vector<std::pair<Vec2, Integer>>& rays) {
  TropCurve2D c;
  c.vertices.push_back({Rational(0), Rational(0)});
  for (const auto& [d, w] : rays) {
    if (w < 1) fail(ErrorKind::Domain, "ray weights must be positive");
    c.edges.push_back({0, std::nullopt, primitive2(d[0], d[1]), w});
  }
  return c;
}

namespace {

TropCurve2D curve_1d(const std::vector<Term>& terms, const Vec2& g) {
  // positions along the primitive direction g
  const Vec2& u0 = terms.front().exponent;
  std::vector<std::pair<Integer, Integer>> pts;
  for (const Term& t : terms) {
    Integer dx = t.exponent[0] - u0[0], dy = t.exponent[1] - u0[1];
    Integer pos = g[0] != 0 ? dx / g[0] : dy / g[1];
    pts.push_back({pos, t.valuation});
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<Integer, Integer>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b unless it lies strictly below the segment a-p
      Integer cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  TropCurve2D c;
  Vec2 dir{-g[1], g[0]};
  Rational gg = q(g[0] * g[0] + g[1] * g[1]);
  for (std::size_t x = 0; x + 1 < hull.size(); ++x) {
    Integer len = hull[x + 1].first - hull[x].first;
    Rational level = Rational(hull[x].second - hull[x + 1].second) / q(len);
    c.vertices.push_back({level * q(g[0]) / gg, level * q(g[1]) / gg});
    std::size_t v = c.vertices.size() - 1;
    c.edges.push_back({v, std::nullopt, dir, len});
    c.edges.push_back({v, std::nullopt, Vec2{-dir[0], -dir[1]}, len});
  }
  return c;
}

// Convex hull (counter-clockwise, no collinear points) of term indices.
std::vector<std::size_t> convex_hull(const std::vector<Term>& terms, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return terms[a].exponent < terms[b].exponent; });
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const Vec2& O = terms[o].exponent;
    const Vec2& A = terms[a].exponent;
    const Vec2& B = terms[b].exponent;
    return (A[0] - O[0]) * (B[1] - O[1]) - (A[1] - O[1]) * (B[0] - O[0]);
  };
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
    h[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

TropCurve2D trop_curve(const ValuedPolynomial2D& f) {
  const auto& terms = f.terms;
  if (terms.size() < 2) fail(ErrorKind::Domain, "a tropical curve needs at least two terms");
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b)
      if (terms[a].exponent == terms[b].exponent) fail(ErrorKind::Domain, "repeated exponent in polynomial");
  const Vec2& u0 = terms[0].exponent;
  const Vec2& u1 = terms[1].exponent;
  Vec2 delta{u1[0] - u0[0], u1[1] - u0[1]};
  bool collinear = true;
  for (const Term& t : terms)
    if (det2({t.exponent[0] - u0[0], t.exponent[1] - u0[1]}, delta) != 0) collinear = false;
  if (collinear) return curve_1d(terms, primitive2(delta[0], delta[1]));

  // Lower faces of the lifted point configuration.
  struct Face {
    std::vector<std::size_t> members;
    Point2 vertex;
  };
  std::vector<Face> faces;
  std::set<std::vector<std::size_t>> seen;
  const std::size_t m = terms.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        const Vec2 &A = terms[a].exponent, &B = terms[b].exponent, &C = terms[c].exponent;
        Integer d = det2({B[0] - A[0], B[1] - A[1]}, {C[0] - A[0], C[1] - A[1]});
        if (d == 0) continue;
        // plane z = c0 + beta . u through the three lifted points
        Rational zb = q(terms[b].valuation - terms[a].valuation);
        Rational zc = q(terms[c].valuation - terms[a].valuation);
        Rational b0 = (zb * q(C[1] - A[1]) - zc * q(B[1] - A[1])) / q(d);
        Rational b1 = (zc * q(B[0] - A[0]) - zb * q(C[0] - A[0])) / q(d);
        Rational c0 = q(terms[a].valuation) - b0 * q(A[0]) - b1 * q(A[1]);
        std::vector<std::size_t> members;
        bool lower = true;
        for (std::size_t x = 0; x < m && lower; ++x) {
          Rational gap = q(terms[x].valuation) - c0 - b0 * q(terms[x].exponent[0]) - b1 * q(terms[x].exponent[1]);
          if (gap < 0) lower = false;
          else if (gap == 0) members.push_back(x);
        }
        if (!lower || !seen.insert(members).second) continue;
        faces.push_back({members, {-b0, -b1}});
      }
  TropCurve2D curve;
  struct EdgeUse {
    std::size_t face;
    Vec2 inward;
    Integer weight;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::vector<EdgeUse>> uses;
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    curve.vertices.push_back(faces[fi].vertex);
    std::vector<std::size_t> h = convex_hull(terms, faces[fi].members);
    for (std::size_t x = 0; x < h.size(); ++x) {
      std::size_t p = h[x], r = h[(x + 1) % h.size()];
      Integer dx = terms[r].exponent[0] - terms[p].exponent[0];
      Integer dy = terms[r].exponent[1] - terms[p].exponent[1];
      Integer w = linalg::gcd(abs(dx), abs(dy));
      uses[{std::min(p, r), std::max(p, r)}].push_back({fi, primitive2(-dy, dx), w});
    }
  }
  for (const auto& [key, us] : uses) {
    if (us.size() == 1) {
      curve.edges.push_back({us[0].face, std::nullopt, us[0].inward, us[0].weight});
    } else if (us.size() == 2) {
      CurveEdge e{us[0].face, us[1].face, us[0].inward, us[0].weight};
      Rational len = curve.edge_length(e);
      Point2 end = curve.point_on(e, len);
      if (len <= 0 || end != curve.vertices[us[1].face])
        fail(ErrorKind::Inconsistency, "dual edge does not join its two vertices");
      curve.edges.push_back(e);
    } else {
      fail(ErrorKind::Inconsistency, "subdivision edge shared by more than two faces");
    }
  }
  return curve;
}

bool check_balanced(const TropCurve2D& c) {
  std::vector<Vec2> sum(c.vertices.size(), Vec2{0, 0});
  for (const CurveEdge& e : c.edges) {
    for (int k = 0; k < 2; ++k) {
      sum.at(e.tail)[k] += e.weight * e.direction[k];
      if (e.head) sum.at(*e.head)[k] -= e.weight * e.direction[k];
    }
  }
  return std::all_of(sum.begin(), sum.end(), [](const Vec2& s) { return s[0] == 0 && s[1] == 0; });
}

std::vector<Rational> GenericSequence::next(std::size_t dim) {
  ++count_;
  Integer den = Integer(count_ + 6);
  std::vector<Rational> out;
  for (std::size_t k = 0; k < dim; ++k) {
    long num = static_cast<long>(rng_() % 97) + 1;
    if (rng_() & 1ULL) num = -num;
    out.push_back(Rational(Integer(num), den));
  }
  return out;
}

std::vector<Rational> GenericSequence::next_positive(std::size_t dim) {
  std::vector<Rational> out = next(dim);
  for (Rational& x : out) x = abs(x);
  return out;
}

Integer StableIntersection::degree() const {
  Integer d = 0;
  for (const IntersectionPoint& p : points) d += p.multiplicity;
  return d;
}

namespace {

// Returns nullopt when the translation hits a degenerate incidence.
std::optional<std::vector<IntersectionPoint>> intersect_translated(const TropCurve2D& c1, const TropCurve2D& c2,
                                                                   const Point2& v) {
  std::vector<IntersectionPoint> out;
  for (const CurveEdge& e : c2.edges)
    if (q(e.direction[0]) * v[1] - q(e.direction[1]) * v[0] == 0) return std::nullopt;
  for (const CurveEdge& e1 : c1.edges) {
    const Point2& p = c1.vertices.at(e1.tail);
    for (const CurveEdge& e2 : c2.edges) {
      const Point2& r = c2.vertices.at(e2.tail);
      Integer d = det2(e1.direction, e2.direction);
      if (d == 0) continue;  // parallel lines separate for eps > 0 since v is not parallel
      // s d1 - t d2 = (r - p) + eps v
      auto solve_st = [&](const Point2& rhs) {
        Rational s = (rhs[0] * q(-e2.direction[1]) + rhs[1] * q(e2.direction[0])) / q(-d);
        Rational t = (q(e1.direction[0]) * rhs[1] - q(e1.direction[1]) * rhs[0]) / q(-d);
        return std::pair<Rational, Rational>{s, t};
      };
      auto [s0, t0] = solve_st({r[0] - p[0], r[1] - p[1]});
      auto [s1, t1] = solve_st(v);
      int ss = lex_sign(s0, s1), ts = lex_sign(t0, t1);
      if (ss == 0 || ts == 0) return std::nullopt;
      if (ss < 0 || ts < 0) continue;
      if (e1.head) {
        Rational len = c1.edge_length(e1);
        int end = lex_sign(len - s0, -s1);
        if (end == 0) return std::nullopt;
        if (end < 0) continue;
      }
      if (e2.head) {
        Rational len = c2.edge_length(e2);
        int end = lex_sign(len - t0, -t1);
        if (end == 0) return std::nullopt;
        if (end < 0) continue;
      }
      Lattice span = Lattice::spanned_by({IntVector{e1.direction[0], e1.direction[1]},
                                          IntVector{e2.direction[0], e2.direction[1]}}, 2);
      Integer index = *linalg::lattice_index(Lattice::standard(2), span).value;
      Point2 at = c1.point_on(e1, s0);
      Point2 drift{s1 * q(e1.direction[0]), s1 * q(e1.direction[1])};
      out.push_back({at, drift, e1.weight * e2.weight * index});
    }
  }
  std::sort(out.begin(), out.end(), [](const IntersectionPoint& a, const IntersectionPoint& b) {
    if (a.point != b.point) return a.point < b.point;
    return a.drift < b.drift;
  });
  return out;
}

}  // namespace

StableIntersection stable_intersection_2d(const TropCurve2D& c1, const TropCurve2D& c2,
                                          std::optional<Point2> translation, std::uint64_t seed) {
  if (translation) {
    if ((*translation)[0] == 0 && (*translation)[1] == 0) fail(ErrorKind::Precondition, "translation must be nonzero");
    auto pts = intersect_translated(c1, c2, *translation);
    if (!pts) fail(ErrorKind::Genericity, "the requested translation is not generic");
    return {*pts, *translation};
  }
  GenericSequence gen(seed);
  for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
    std::vector<Rational> v = gen.next(2);
    Point2 t{v[0], v[1]};
    if (auto pts = intersect_translated(c1, c2, t)) return {*pts, t};
  }
  fail(ErrorKind::Genericity, "no generic translation found within the retry budget");
}

namespace {

// For each vertex: the lowest incident edge index if the vertex is an
// artificial point on a straight line (two opposite edges, equal weights).
std::vector<std::optional<std::size_t>> straight_vertices(const TropCurve2D& c) {
  std::vector<std::vector<std::pair<std::size_t, Vec2>>> inc(c.vertices.size());
  for (std::size_t x = 0; x < c.edges.size(); ++x) {
    const CurveEdge& e = c.edges[x];
    inc.at(e.tail).push_back({x, e.direction});
    if (e.head) inc.at(*e.head).push_back({x, Vec2{-e.direction[0], -e.direction[1]}});
  }
  std::vector<std::optional<std::size_t>> out(c.vertices.size());
  for (std::size_t v = 0; v < inc.size(); ++v) {
    if (inc[v].size() != 2) continue;
    const auto& [a, da] = inc[v][0];
    const auto& [b, db] = inc[v][1];
    if (da[0] == -db[0] && da[1] == -db[1] && c.edges[a].weight == c.edges[b].weight) out[v] = std::min(a, b);
  }
  return out;
}

}  // namespace

std::vector<Integer> ray_crossings(const TropCurve2D& c, const std::vector<Vec2>& rays) {
  std::vector<Integer> out;
  const auto straight = straight_vertices(c);
  for (const Vec2& raw : rays) {
    Vec2 ray = primitive2(raw[0], raw[1]);
    Integer total = 0;
    for (const CurveEdge& e : c.edges) {
      const Point2& p = c.vertices.at(e.tail);
      Integer d = det2(ray, e.direction);
      std::optional<Rational> len;
      if (e.head) len = c.edge_length(e);
      if (d == 0) {
        // parallel: overlap only if the edge line passes through the origin
        if (p[0] * q(ray[1]) - p[1] * q(ray[0]) != 0) continue;
        fail(ErrorKind::Positioning, "curve edge runs along a ray");
      }
      // s ray = p + t dir
      Rational s = (q(e.direction[1]) * p[0] - q(e.direction[0]) * p[1]) / q(d);
      Rational t = (q(ray[1]) * p[0] - q(ray[0]) * p[1]) / q(d);
      if (s < 0 || t < 0 || (len && t > *len)) continue;
      if (s == 0) fail(ErrorKind::Positioning, "curve passes through the origin");
      if (t == 0 || (len && t == *len)) {
        std::size_t v = t == 0 ? e.tail : *e.head;
        if (!straight[v]) fail(ErrorKind::Positioning, "ray meets a curve vertex");
        if (*straight[v] != static_cast<std::size_t>(&e - c.edges.data())) continue;
      }
      total += e.weight * abs(d);
    }
    out.push_back(total);
  }
  return out;
}

std::vector<std::size_t> admissible_facets(const WeightedFan& starSigma, const std::vector<IntVector>& sigma) {
  validate(starSigma);
  const std::size_t dim = static_cast<std::size_t>(starSigma.dim);
  std::size_t top = 0;
  std::vector<std::size_t> ranks;
  for (std::size_t c = 0; c < starSigma.cones.size(); ++c) {
    ranks.push_back(rank_of(local_cone(starSigma, c).all(), dim));
    top = std::max(top, ranks.back());
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < starSigma.cones.size(); ++c) {
    if (ranks[c] != top) continue;
    LocalCone z = local_cone(starSigma, c);
    bool ok = true;
    for (const IntVector& g : sigma) {
      IntVector neg(g);
      for (Integer& x : neg) x = -x;
      if (!cone_contains(z, g, dim) || !cone_contains(z, neg, dim)) ok = false;
    }
    if (ok) out.push_back(c);
  }
  return out;
}

namespace {

// nullopt: the chosen generic vector is degenerate.
std::optional<Rational> facet_count(const WeightedFan& starSigma, const std::vector<IntVector>& sigma,
                                    const WeightedFan& starTropX, std::size_t facet, const std::vector<Rational>& coeff) {
  const std::size_t dim = static_cast<std::size_t>(starSigma.dim);
  LocalCone z = local_cone(starSigma, facet);
  std::vector<Rational> v(dim);
  for (std::size_t k = 0; k < z.gens.size(); ++k)
    for (std::size_t x = 0; x < dim; ++x) v[x] += coeff[k] * q(z.gens[k][x]);
  Lattice nz = linalg::saturation(lattice_of(z.all(), dim));
  Lattice ls = linalg::saturation(lattice_of(sigma, dim));
  Rational total = 0;
  for (std::size_t c = 0; c < starTropX.cones.size(); ++c) {
    LocalCone cx = local_cone(starTropX, c);
    bool inside = true;
    for (const IntVector& g : cx.gens) inside = inside && cone_contains(z, g, dim);
    for (const IntVector& g : cx.lineality) {
      IntVector neg(g);
      for (Integer& x : neg) x = -x;
      inside = inside && cone_contains(z, g, dim) && cone_contains(z, neg, dim);
    }
    if (!inside) continue;
    // sum t_b gens + sum lam lin - sum s sigma = v
    std::vector<std::vector<Rational>> cols;
    for (const IntVector& g : cx.gens) cols.push_back(to_rational(g));
    for (const IntVector& g : cx.lineality) cols.push_back(to_rational(g));
    for (const IntVector& g : sigma) {
      std::vector<Rational> neg = to_rational(g);
      for (Rational& x : neg) x = -x;
      cols.push_back(neg);
    }
    SolveResult s = solve(cols, v);
    if (s.status == SolveStatus::Inconsistent) continue;
    if (s.status == SolveStatus::Underdetermined) return std::nullopt;
    bool positive = true;
    for (std::size_t b = 0; b < cx.gens.size(); ++b) {
      if (s.x[b] == 0) return std::nullopt;
      if (s.x[b] < 0) positive = false;
    }
    if (!positive) continue;
    Lattice lc = linalg::saturation(lattice_of(cx.all(), dim));
    linalg::LatticeIndex idx = linalg::lattice_index(nz, linalg::sum(lc, ls));
    if (idx.infinite()) return std::nullopt;
    total += q(starTropX.cones[c].weight * *idx.value);
  }
  return total / q(starSigma.cones[facet].weight);
}

}  // namespace

Rational local_mult_at_facet(const WeightedFan& starSigma, const std::vector<IntVector>& sigma,
                             const WeightedFan& starTropX, std::size_t facet, std::uint64_t seed) {
  validate(starSigma);
  validate(starTropX);
  if (starSigma.dim != starTropX.dim) fail(ErrorKind::Domain, "fans live in different dimensions");
  for (const IntVector& g : sigma)
    if (static_cast<int>(g.size()) != starSigma.dim) fail(ErrorKind::Structural, "sigma generator has the wrong dimension");
  std::vector<std::size_t> ok = admissible_facets(starSigma, sigma);
  if (std::find(ok.begin(), ok.end(), facet) == ok.end())
    fail(ErrorKind::Precondition, "cone " + std::to_string(facet) + " is not a facet containing sigma");
  GenericSequence gen(seed);
  const std::size_t ng = starSigma.cones[facet].gens.size();
  for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
    if (auto r = facet_count(starSigma, sigma, starTropX, facet, gen.next_positive(ng))) return *r;
  }
  fail(ErrorKind::Genericity, "no generic vector found in facet " + std::to_string(facet));
}

std::vector<FacetMultiplicity> local_mult_by_facet(const WeightedFan& starSigma, const std::vector<IntVector>& sigma,
                                                   const WeightedFan& starTropX, std::uint64_t seed) {
  std::vector<FacetMultiplicity> out;
  for (std::size_t f : admissible_facets(starSigma, sigma))
    out.push_back({f, local_mult_at_facet(starSigma, sigma, starTropX, f, seed)});
  return out;
}

Integer local_mult(const WeightedFan& starSigma, const std::vector<IntVector>& sigma, const WeightedFan& starTropX,
                   std::optional<std::size_t> facet, std::uint64_t seed) {
  Rational value;
  if (facet) {
    value = local_mult_at_facet(starSigma, sigma, starTropX, *facet, seed);
  } else {
    std::vector<FacetMultiplicity> all = local_mult_by_facet(starSigma, sigma, starTropX, seed);
    if (all.empty()) fail(ErrorKind::Precondition, "sigma lies in no facet of the ambient star");
    value = all.front().value;
    for (const FacetMultiplicity& m : all)
      if (m.value != value)
        fail(ErrorKind::Inconsistency, "facet " + std::to_string(m.facet) + " gives " + to_decimal(m.value) +
                                           " but facet " + std::to_string(all.front().facet) + " gives " +
                                           to_decimal(value));
  }
  if (denominator(value) != 1 || value <= 0)
    fail(ErrorKind::Inconsistency, "multiplicity " + to_decimal(value) + " is not a positive integer");
  return numerator(value);
}

}  // namespace psifw::trop
