// Desk-scale tropical intersection toolkit: fans, plane curves, multiplicities.
#pragma once

#include "psifw/common.hpp"
#include "psifw/intlinalg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace psifw::trop {

using linalg::IntVector;
using Point2 = std::array<Rational, 2>;
using Vec2 = std::array<Integer, 2>;

constexpr int kMaxFanDim = 8;

struct FanCone {
  std::vector<IntVector> gens;
  Integer weight = 1;
};

struct WeightedFan {
  int dim = 0;
  std::vector<IntVector> lineality;
  std::vector<FanCone> cones;
};

void validate(const WeightedFan& fan);

// Edges start at a vertex; a ray has no head.
struct CurveEdge {
  std::size_t tail = 0;
  std::optional<std::size_t> head;
  Vec2 direction{};  // primitive, pointing away from tail
  Integer weight = 1;
};

struct TropCurve2D {
  std::vector<Point2> vertices;
  std::vector<CurveEdge> edges;

  TropCurve2D scaled(const Integer& factor) const;
  Point2 point_on(const CurveEdge& e, const Rational& s) const;
  Rational edge_length(const CurveEdge& e) const;  // multiple of direction; requires head
  static TropCurve2D fan(const std::vector<std::pair<Vec2, Integer>>& rays);  // rays from the origin
};

struct Term {
  Vec2 exponent{};
  Integer valuation = 0;
};

struct ValuedPolynomial2D {
  std::vector<Term> terms;
};

TropCurve2D trop_curve(const ValuedPolynomial2D& f);
bool check_balanced(const TropCurve2D& c);

// Deterministic rational vectors with growing denominators.
class GenericSequence {
 public:
  explicit GenericSequence(std::uint64_t seed = 0) : rng_(0x5eedULL + seed * 0x9e3779b97f4a7c15ULL) {}
  std::vector<Rational> next(std::size_t dim);           // nonzero signed entries
  std::vector<Rational> next_positive(std::size_t dim);  // positive entries

 private:
  std::mt19937_64 rng_;
  std::uint64_t count_ = 0;
};

struct IntersectionPoint {
  Point2 point;  // limit as the translation shrinks to zero
  Point2 drift;  // first-order displacement per unit translation
  Integer multiplicity;
};

struct StableIntersection {
  std::vector<IntersectionPoint> points;
  Point2 translation;
  Integer degree() const;
};

constexpr int kGenericRetries = 64;

// C2 is moved by eps * translation with eps infinitesimal. Without an explicit
// translation the generic sequence for `seed` is used.
StableIntersection stable_intersection_2d(const TropCurve2D& c1, const TropCurve2D& c2,
                                          std::optional<Point2> translation = std::nullopt, std::uint64_t seed = 0);

std::vector<Integer> ray_crossings(const TropCurve2D& c, const std::vector<Vec2>& rays);

struct FacetMultiplicity {
  std::size_t facet = 0;
  Rational value;
};

std::vector<std::size_t> admissible_facets(const WeightedFan& starSigma, const std::vector<IntVector>& sigma);
Rational local_mult_at_facet(const WeightedFan& starSigma, const std::vector<IntVector>& sigma,
                             const WeightedFan& starTropX, std::size_t facet, std::uint64_t seed = 0);
std::vector<FacetMultiplicity> local_mult_by_facet(const WeightedFan& starSigma, const std::vector<IntVector>& sigma,
                                                   const WeightedFan& starTropX, std::uint64_t seed = 0);
Integer local_mult(const WeightedFan& starSigma, const std::vector<IntVector>& sigma, const WeightedFan& starTropX,
                   std::optional<std::size_t> facet = std::nullopt, std::uint64_t seed = 0);

}  // namespace psifw::trop
