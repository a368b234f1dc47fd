// Exact integer linear algebra over arbitrary-precision integers.
#pragma once

#include "psifw/common.hpp"

#include <optional>
#include <span>
#include <vector>

namespace psifw::linalg {

using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);  // needs >= 1 row

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  IntVector row(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& k);  // row_t += k row_s
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  IntVector operator*(const IntVector& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, H = U * M
};

struct SmithResult {
  IntMatrix U;  // unimodular rows
  IntMatrix D;  // diagonal, d1 | d2 | ...
  IntMatrix V;  // unimodular cols, D = U * M * V
  IntMatrix Vinv;
  std::size_t rank = 0;
};

HermiteResult hnf(const IntMatrix& m);
SmithResult smith(const IntMatrix& m);
std::vector<Integer> snf_diagonal(const IntMatrix& m);  // nonzero elementary divisors
Integer determinant(const IntMatrix& m);                // Bareiss
std::size_t rank(const IntMatrix& m);

struct Lattice {
  std::size_t ambientRank = 0;
  IntMatrix generators;  // rows
  static Lattice standard(std::size_t k);
  static Lattice spanned_by(const std::vector<IntVector>& gens, std::size_t ambientRank);
};

// Index of sub inside ambient, or nullopt when it is infinite.
struct LatticeIndex {
  std::optional<Integer> value;
  bool infinite() const { return !value.has_value(); }
};

LatticeIndex lattice_index(const Lattice& ambient, const Lattice& sub);
Lattice saturation(const Lattice& l);  // basis of (Q-span) ∩ Z^k
Lattice sum(const Lattice& a, const Lattice& b);

// Back substitution for unit upper triangular 0/1 matrices.
IntVector solve_unit_upper_triangular(const IntMatrix& a, std::span<const Integer> l);
IntMatrix unit_upper_triangular_inverse(const IntMatrix& a);

Integer gcd(const Integer& a, const Integer& b);
IntVector primitive(const IntVector& v);

}  // namespace psifw::linalg
