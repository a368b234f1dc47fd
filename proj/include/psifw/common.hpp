// Shared numeric types, leg sets and error kinds.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace psifw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer ipow(const Integer& base, unsigned exponent);
std::string to_decimal(const Integer& x);
std::string to_decimal(const Rational& x);

enum class ErrorKind {
  Structural,
  Precondition,
  Ambiguity,
  Domain,
  Genericity,
  Inconsistency,
  Guard,
  Positioning,
  Parse,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

constexpr int kMaxLegs = 63;

// Subset of leg labels 1..63 stored as a bitmask (bit l-1 for label l).
// Ordered by size, then lexicographically by sorted elements.
class LegSet {
 public:
  constexpr LegSet() = default;
  constexpr explicit LegSet(std::uint64_t bits) : bits_(bits) {}
  LegSet(std::initializer_list<int> legs);
  static LegSet range(int n);  // {1..n}
  static LegSet single(int leg);
  static LegSet from_vector(const std::vector<int>& legs);

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int leg) const;
  int min() const;  // smallest label; requires non-empty
  int max() const;
  std::vector<int> elements() const;

  void insert(int leg);
  void erase(int leg);

  bool subset_of(LegSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool disjoint(LegSet other) const { return (bits_ & other.bits_) == 0; }
  bool meets(LegSet other) const { return !disjoint(other); }

  friend LegSet operator|(LegSet a, LegSet b) { return LegSet(a.bits_ | b.bits_); }
  friend LegSet operator&(LegSet a, LegSet b) { return LegSet(a.bits_ & b.bits_); }
  friend LegSet operator-(LegSet a, LegSet b) { return LegSet(a.bits_ & ~b.bits_); }
  friend bool operator==(LegSet a, LegSet b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(LegSet a, LegSet b);

  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace psifw
