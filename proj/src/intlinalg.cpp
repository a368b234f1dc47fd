#include "psifw/intlinalg.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>

namespace psifw::linalg {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer product(const std::vector<Integer>& xs) {
  Integer p = 1;
  for (const Integer& x : xs) p *= x;
  return p;
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

}  // namespace

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, abs(x));
  if (g == 0) fail(ErrorKind::Domain, "zero vector has no primitive direction");
  IntVector out(v);
  for (Integer& x : out) x /= g;
  return out;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::Structural, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) fail(ErrorKind::Structural, "cannot infer column count of an empty matrix");
  return from_rows(rows, rows.front().size());
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) += k * (*this)(source, c);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, target) += k * (*this)(r, source);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Structural, "matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (v.size() != cols_) fail(ErrorKind::Structural, "matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

HermiteResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t row = 0;
  for (std::size_t c = 0; c < h.cols() && row < h.rows(); ++c) {
    while (true) {
      std::size_t piv = h.rows();
      for (std::size_t i = row; i < h.rows(); ++i)
        if (h(i, c) != 0 && (piv == h.rows() || abs(h(i, c)) < abs(h(piv, c)))) piv = i;
      if (piv == h.rows()) break;
      h.swap_rows(row, piv);
      u.swap_rows(row, piv);
      bool clean = true;
      for (std::size_t i = row + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(row, c);
        h.add_row_multiple(i, row, -q);
        u.add_row_multiple(i, row, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(row, c) == 0) continue;
    if (h(row, c) < 0) {
      h.negate_row(row);
      u.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(h(i, c), h(row, c));
      h.add_row_multiple(i, row, -q);
      u.add_row_multiple(i, row, -q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SmithResult smith(const IntMatrix& m) {
  SmithResult s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = s.D;
  auto row_add = [&](std::size_t t, std::size_t src, const Integer& k) {
    d.add_row_multiple(t, src, k);
    s.U.add_row_multiple(t, src, k);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    s.U.swap_rows(a, b);
  };
  // col_t += k col_src; inverse acts on rows of Vinv: row_src -= k row_t
  auto col_add = [&](std::size_t t, std::size_t src, const Integer& k) {
    d.add_col_multiple(t, src, k);
    s.V.add_col_multiple(t, src, k);
    s.Vinv.add_row_multiple(src, t, -k);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    s.V.swap_cols(a, b);
    s.Vinv.swap_rows(a, b);
  };
  const std::size_t lim = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < lim; ++t) {
    std::size_t pr = d.rows(), pc = d.cols();
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j)
        if (d(i, j) != 0 && (pr == d.rows() || abs(d(i, j)) < abs(d(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == d.rows()) break;
    row_swap(t, pr);
    col_swap(t, pc);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) {
          row_swap(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) {
          col_swap(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < d.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols() && !fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_add(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
    ++s.rank;
  }
  return s;
}

std::vector<Integer> snf_diagonal(const IntMatrix& m) {
  SmithResult s = smith(m);
  std::vector<Integer> out;
  for (std::size_t t = 0; t < s.rank; ++t) out.push_back(s.D(t, t));
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Precondition, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  HermiteResult h = hnf(m);
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.H.rows(); ++i) {
    IntVector row = h.H.row(i);
    if (std::any_of(row.begin(), row.end(), [](const Integer& x) { return x != 0; })) ++r;
  }
  return r;
}

Lattice Lattice::standard(std::size_t k) { return {k, IntMatrix::identity(k)}; }

Lattice Lattice::spanned_by(const std::vector<IntVector>& gens, std::size_t ambientRank) {
  return {ambientRank, IntMatrix::from_rows(gens, ambientRank)};
}

LatticeIndex lattice_index(const Lattice& ambient, const Lattice& sub) {
  if (ambient.ambientRank != sub.ambientRank || ambient.generators.cols() != sub.generators.cols())
    fail(ErrorKind::Domain, "lattices live in different ambient spaces");
  std::vector<Integer> da = snf_diagonal(ambient.generators);
  std::vector<Integer> ds = snf_diagonal(sub.generators);
  std::vector<Integer> dj = snf_diagonal(stack(ambient.generators, sub.generators));
  if (dj.size() != da.size()) fail(ErrorKind::Domain, "sublattice is not contained in the ambient span");
  if (ds.size() < da.size()) return {};
  if (product(dj) != product(da)) fail(ErrorKind::Domain, "sublattice is not contained in the ambient lattice");
  return {product(ds) / product(da)};
}

Lattice saturation(const Lattice& l) {
  SmithResult s = smith(l.generators);
  IntMatrix basis(s.rank, l.generators.cols());
  for (std::size_t r = 0; r < s.rank; ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) basis(r, c) = s.Vinv(r, c);
  return {l.ambientRank, std::move(basis)};
}

Lattice sum(const Lattice& a, const Lattice& b) {
  if (a.ambientRank != b.ambientRank) fail(ErrorKind::Domain, "lattices live in different ambient spaces");
  return {a.ambientRank, stack(a.generators, b.generators)};
}

namespace {

void check_unit_upper(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::Precondition, "path matrix must be square");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (i == j && x != 1) fail(ErrorKind::Precondition, "diagonal entry is not 1");
      if (i > j && x != 0) fail(ErrorKind::Precondition, "matrix is not upper triangular");
      if (i < j && x != 0 && x != 1) fail(ErrorKind::Precondition, "entry outside {0,1}");
    }
}

}  // namespace

IntVector solve_unit_upper_triangular(const IntMatrix& a, std::span<const Integer> l) {
  check_unit_upper(a);
  if (l.size() != a.rows()) fail(ErrorKind::Precondition, "right-hand side has the wrong length");
  const std::size_t n = a.rows();
  IntVector y(n);
  for (std::size_t q = n; q-- > 0;) {
    Integer v = l[q];
    for (std::size_t p = q + 1; p < n; ++p) v -= a(q, p) * y[p];
    y[q] = v;
  }
  return y;
}

IntMatrix unit_upper_triangular_inverse(const IntMatrix& a) {
  check_unit_upper(a);
  const std::size_t n = a.rows();
  IntMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    IntVector e(n);
    e[c] = 1;
    IntVector col = solve_unit_upper_triangular(a, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace psifw::linalg
