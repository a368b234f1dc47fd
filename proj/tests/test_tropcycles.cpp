#include "doctest.h"

#include "psifw/tropcycles.hpp"

#include <algorithm>
#include <map>

using namespace psifw;
using namespace psifw::trop;

namespace {

ValuedPolynomial2D poly(std::initializer_list<std::array<int, 3>> terms) {
  ValuedPolynomial2D f;
  for (auto [a, b, v] : terms) f.terms.push_back({{a, b}, v});
  return f;
}

// Rays of a curve grouped by (tail vertex, direction) -> weight.
std::map<std::pair<Point2, Vec2>, Integer> rays_of(const TropCurve2D& c) {
  std::map<std::pair<Point2, Vec2>, Integer> out;
  for (const CurveEdge& e : c.edges)
    if (!e.head) out[{c.vertices[e.tail], e.direction}] += e.weight;
  return out;
}

Point2 pt(Rational x, Rational y) { return {x, y}; }

IntVector iv(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

TropCurve2D bezout_x1() { return trop_curve(poly({{2, 2, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 0}})); }
TropCurve2D bezout_x2() { return trop_curve(poly({{2, 1, 0}, {1, 2, 0}, {1, 0, 0}, {0, 1, 0}})); }

}  // namespace

TEST_CASE("trop_curve of the P2 degeneration") {
  TropCurve2D c = trop_curve(poly({{3, 0, 0}, {1, 1, -2}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}}));
  CHECK(check_balanced(c));
  std::vector<Point2> vs = c.vertices;
  std::sort(vs.begin(), vs.end());
  CHECK(vs == std::vector<Point2>{pt(Rational(1, 2), 3), pt(1, 3), pt(3, 1)});
  auto rays = rays_of(c);
  CHECK(rays.size() == 5);
  CHECK(rays[{pt(3, 1), Vec2{1, 0}}] == 1);
  CHECK(rays[{pt(3, 1), Vec2{0, -1}}] == 1);
  CHECK(rays[{pt(1, 3), Vec2{0, 1}}] == 1);
  CHECK(rays[{pt(Rational(1, 2), 3), Vec2{0, 1}}] == 2);
  // slope-2 leftmost ray
  CHECK(rays[{pt(Rational(1, 2), 3), Vec2{-1, -2}}] == 1);
  CHECK(ray_crossings(c, {{1, 0}, {0, 1}, {-1, -1}}) == std::vector<Integer>{1, 1, 1});
  CHECK(ray_crossings(c.scaled(2), {{1, 0}, {0, 1}, {-1, -1}}) == std::vector<Integer>{2, 2, 2});
}

TEST_CASE("trop_curve of binomials") {
  TropCurve2D line = trop_curve(poly({{1, 0, 0}, {0, 1, 0}}));
  REQUIRE(line.edges.size() == 2);
  std::vector<Vec2> dirs{line.edges[0].direction, line.edges[1].direction};
  std::sort(dirs.begin(), dirs.end());
  CHECK(dirs == std::vector<Vec2>{{-1, -1}, {1, 1}});
  CHECK(line.edges[0].weight == 1);
  CHECK(check_balanced(line));

  TropCurve2D para = trop_curve(poly({{2, 0, 0}, {0, 1, 0}}));
  REQUIRE(para.edges.size() == 2);
  CHECK(para.edges[0].weight == 1);
  CHECK((para.edges[0].direction == Vec2{1, 2} || para.edges[0].direction == Vec2{-1, -2}));
  CHECK(check_balanced(para));

  // two parallel lines from a subdivided segment, one doubled line otherwise
  CHECK(trop_curve(poly({{0, 0, 0}, {1, 0, -1}, {2, 0, 0}})).edges.size() == 4);
  TropCurve2D dbl = trop_curve(poly({{0, 0, 0}, {1, 0, 1}, {2, 0, 0}}));
  REQUIRE(dbl.edges.size() == 2);
  CHECK(dbl.edges[0].weight == 2);

  CHECK_THROWS_AS(trop_curve(poly({{1, 1, 0}})), Error);
  CHECK_THROWS_AS(trop_curve(poly({{1, 1, 0}, {1, 1, 2}})), Error);
}

TEST_CASE("balancing checks") {
  CHECK(check_balanced(bezout_x1()));
  TropCurve2D fan = TropCurve2D::fan({{{1, 0}, 3}, {{0, 1}, 3}, {{-2, -1}, 1}, {{-1, -2}, 1}});
  CHECK(check_balanced(fan));
  CHECK_FALSE(check_balanced(TropCurve2D::fan({{{1, 0}, 1}})));
}

TEST_CASE("Bezout example: stable intersection of ten points") {
  TropCurve2D x1 = bezout_x1();
  TropCurve2D x2 = bezout_x2();
  auto rays1 = rays_of(x1);
  CHECK(rays1[{pt(0, 0), Vec2{1, 0}}] == 3);
  CHECK(rays1[{pt(0, 0), Vec2{0, 1}}] == 3);
  CHECK(rays1[{pt(0, 0), Vec2{-2, -1}}] == 1);
  CHECK(rays1[{pt(0, 0), Vec2{-1, -2}}] == 1);
  CHECK(rays_of(x2).size() == 4);

  StableIntersection figure = stable_intersection_2d(x1, x2, pt(Rational(-1, 2), Rational(-1, 10)));
  CHECK(figure.degree() == 10);
  std::vector<Integer> mults;
  for (const auto& p : figure.points) mults.push_back(p.multiplicity);
  std::sort(mults.begin(), mults.end());
  CHECK(mults == std::vector<Integer>{1, 3, 3, 3});
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(stable_intersection_2d(x1, x2, std::nullopt, seed).degree() == 10);
}

TEST_CASE("stable intersection of two coordinate lines") {
  TropCurve2D h = TropCurve2D::fan({{{1, 0}, 1}, {{-1, 0}, 1}});
  TropCurve2D v = TropCurve2D::fan({{{0, 1}, 1}, {{0, -1}, 1}});
  StableIntersection s = stable_intersection_2d(h, v);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].multiplicity == 1);
  CHECK(s.points[0].point == pt(0, 0));
  CHECK_THROWS_AS(stable_intersection_2d(h, v, pt(1, 0)), Error);
}

TEST_CASE("ray crossings edge cases") {
  TropCurve2D far = trop_curve(poly({{1, 0, 0}, {0, 0, 5}}));  // the line x = 5
  CHECK(ray_crossings(far, {{-1, 0}, {0, 1}}) == std::vector<Integer>{0, 0});
  CHECK(ray_crossings(far, {{1, 0}}) == std::vector<Integer>{1});
  TropCurve2D fan = TropCurve2D::fan({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  CHECK_THROWS_AS(ray_crossings(fan, {{1, 1}}), Error);
}

namespace {

// Local data of the degeneration example (x1 x2 x3 ... plane 2x+y+z).
WeightedFan sigma_star_e1() {
  return {3, {iv({1, 0, 0})}, {{{iv({0, 1, 0})}, 1}, {{iv({0, 0, 1})}, 1}, {{iv({-1, -1, -1})}, 1}}};
}

WeightedFan tropx_star_e1() {
  return {3, {}, {{{iv({-1, 2, 0})}, 1}, {{iv({-1, 0, 2})}, 1}, {{iv({1, -1, -1})}, 2}}};
}

}  // namespace

TEST_CASE("local multiplicity on the degeneration example") {
  WeightedFan s = sigma_star_e1();
  WeightedFan x = tropx_star_e1();
  std::vector<IntVector> sigma{iv({1, 0, 0})};
  CHECK(admissible_facets(s, sigma) == std::vector<std::size_t>{0, 1, 2});
  CHECK(local_mult(s, sigma, x, 0) == 2);
  CHECK(local_mult(s, sigma, x, 2) == 2);
  CHECK(local_mult(s, sigma, x) == 2);
  for (const auto& m : local_mult_by_facet(s, sigma, x)) CHECK(m.value == 2);

  WeightedFan s2{3, {iv({0, 1, 0})}, {{{iv({1, 0, 0})}, 1}, {{iv({0, 0, 1})}, 1}, {{iv({-1, -1, -1})}, 1}}};
  WeightedFan x2{3, {}, {{{iv({1, -2, 0})}, 1}, {{iv({0, -1, 1})}, 1}, {{iv({-1, 3, -1})}, 1}}};
  CHECK(local_mult(s2, {iv({0, 1, 0})}, x2) == 1);

  // corrupting a weight breaks facet independence
  WeightedFan bad = x;
  bad.cones[2].weight = 3;
  CHECK_THROWS_AS(local_mult(s, sigma, bad), Error);
}

TEST_CASE("local multiplicity transverse unimodular case") {
  // Sigma = plane z = 0 as one facet; sigma is the facet; TropX the z-axis line.
  WeightedFan s{3, {iv({1, 0, 0}), iv({0, 1, 0})}, {{{}, 1}}};
  WeightedFan x{3, {}, {{{iv({0, 0, 1})}, 1}, {{iv({0, 0, -1})}, 1}}};
  // the facet is all of its span, so sigma spans it too; v is 0 and the line meets it once
  WeightedFan s3{3, {}, {{{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}, 1}}};
  WeightedFan line{3, {iv({1, 1, 1})}, {{{}, 1}}};
  std::vector<IntVector> sigma{iv({1, 0, 0}), iv({0, 1, 0})};
  CHECK_THROWS_AS(local_mult(s3, sigma, line), Error);  // sigma is not a face through the origin star
  WeightedFan flat{3, {iv({1, 0, 0}), iv({0, 1, 0})}, {{{iv({0, 0, 1})}, 1}}};
  CHECK(local_mult(flat, sigma, x) == 1);
  (void)s;
}
