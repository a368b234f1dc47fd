#include "doctest.h"

#include "psifw/intlinalg.hpp"

using namespace psifw;
using namespace psifw::linalg;

namespace {

IntVector iv(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }
IntMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<IntVector> r;
  for (auto row : rows) r.push_back(iv(row));
  return IntMatrix::from_rows(r);
}

bool is_row_hnf(const IntMatrix& h) {
  std::size_t lastPivot = 0;
  bool first = true;
  bool zeroSeen = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      zeroSeen = true;
      continue;
    }
    if (zeroSeen) return false;
    if (!first && c <= lastPivot) return false;
    if (h(r, c) <= 0) return false;
    for (std::size_t a = 0; a < r; ++a)
      if (h(a, c) < 0 || h(a, c) >= h(r, c)) return false;
    lastPivot = c;
    first = false;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf") {
  auto id = hnf(IntMatrix::identity(3));
  CHECK(id.H == IntMatrix::identity(3));
  CHECK(id.U == IntMatrix::identity(3));

  IntMatrix m = mat({{2, 4}, {6, 8}});
  auto h = hnf(m);
  CHECK(h.H == h.U * m);
  CHECK(abs(determinant(h.U)) == 1);
  CHECK(abs(determinant(h.H)) == 8);
  CHECK(is_row_hnf(h.H));

  auto single = hnf(mat({{0, 3, 0}}));
  CHECK(single.H == mat({{0, 3, 0}}));

  IntMatrix w = mat({{3, 5, 7, 2}, {6, 10, 14, 4}, {1, 0, 2, 9}});
  auto hw = hnf(w);
  CHECK(hw.H == hw.U * w);
  CHECK(is_row_hnf(hw.H));
}

TEST_CASE("smith normal form") {
  CHECK(snf_diagonal(mat({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
  CHECK(snf_diagonal(IntMatrix::identity(4)) == std::vector<Integer>{1, 1, 1, 1});
  CHECK(snf_diagonal(mat({{2, 4}, {6, 8}})) == std::vector<Integer>{2, 4});
  IntMatrix m = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  SmithResult s = smith(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.V * s.Vinv == IntMatrix::identity(3));
  CHECK(snf_diagonal(m) == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("determinant") {
  CHECK(determinant(mat({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(mat({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(determinant(mat({{0, 2, 1}, {3, 0, 0}, {1, 1, 1}})) == -3);
}

TEST_CASE("lattice_index") {
  Lattice z2 = Lattice::standard(2);
  CHECK(*lattice_index(z2, Lattice::spanned_by({iv({1, 0}), iv({0, 2})}, 2)).value == 2);
  CHECK(lattice_index(z2, Lattice::spanned_by({iv({1, 1})}, 2)).infinite());

  // N_zeta = span(e1, e2) inside Z^3
  Lattice nz = Lattice::spanned_by({iv({1, 0, 0}), iv({0, 1, 0})}, 3);
  CHECK(*lattice_index(nz, Lattice::spanned_by({iv({-1, 2, 0}), iv({1, 0, 0})}, 3)).value == 2);
  CHECK_THROWS_AS(lattice_index(nz, Lattice::spanned_by({iv({0, 0, 1}), iv({1, 0, 0})}, 3)), Error);
}

TEST_CASE("saturation") {
  Lattice l = Lattice::spanned_by({iv({2, 4, 0}), iv({0, 0, 3})}, 3);
  Lattice s = saturation(l);
  CHECK(*lattice_index(s, l).value == 6);
  CHECK(snf_diagonal(s.generators) == std::vector<Integer>{1, 1});
}

TEST_CASE("solve_unit_upper_triangular") {
  CHECK(solve_unit_upper_triangular(mat({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}), iv({200, 20, 1})) == iv({180, 19, 1}));
  CHECK(solve_unit_upper_triangular(IntMatrix::identity(3), iv({4, 5, 6})) == iv({4, 5, 6}));
  CHECK(solve_unit_upper_triangular(mat({{1, 1}, {0, 1}}), iv({400, 20})) == iv({380, 20}));
  CHECK_THROWS_AS(solve_unit_upper_triangular(mat({{1, 0}, {1, 1}}), iv({1, 1})), Error);
  CHECK_THROWS_AS(solve_unit_upper_triangular(mat({{2, 0}, {0, 1}}), iv({1, 1})), Error);
  CHECK(unit_upper_triangular_inverse(mat({{1, 1}, {0, 1}})) == mat({{1, -1}, {0, 1}}));
}
