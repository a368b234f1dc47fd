#include "psifw/common.hpp"

#include <sstream>

namespace psifw {

Integer ipow(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::string to_decimal(const Integer& x) { return x.str(); }

std::string to_decimal(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Genericity: return "genericity";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Guard: return "guard";
    case ErrorKind::Positioning: return "positioning";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

LegSet::LegSet(std::initializer_list<int> legs) {
  for (int l : legs) insert(l);
}

LegSet LegSet::range(int n) {
  if (n < 0 || n > kMaxLegs) fail(ErrorKind::Domain, "leg count out of range: " + std::to_string(n));
  return LegSet(n == 64 ? ~0ULL : ((1ULL << n) - 1));
}

LegSet LegSet::single(int leg) {
  LegSet s;
  s.insert(leg);
  return s;
}

LegSet LegSet::from_vector(const std::vector<int>& legs) {
  LegSet s;
  for (int l : legs) {
    if (s.contains(l)) fail(ErrorKind::Structural, "duplicate leg label " + std::to_string(l));
    s.insert(l);
  }
  return s;
}

bool LegSet::contains(int leg) const {
  if (leg < 1 || leg > kMaxLegs) return false;
  return (bits_ >> (leg - 1)) & 1ULL;
}

int LegSet::min() const {
  if (bits_ == 0) fail(ErrorKind::Precondition, "min of empty leg set");
  return std::countr_zero(bits_) + 1;
}

int LegSet::max() const {
  if (bits_ == 0) fail(ErrorKind::Precondition, "max of empty leg set");
  return 64 - std::countl_zero(bits_);
}

std::vector<int> LegSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

void LegSet::insert(int leg) {
  if (leg < 1 || leg > kMaxLegs) fail(ErrorKind::Domain, "leg label out of range: " + std::to_string(leg));
  bits_ |= 1ULL << (leg - 1);
}

void LegSet::erase(int leg) {
  if (leg < 1 || leg > kMaxLegs) return;
  bits_ &= ~(1ULL << (leg - 1));
}

std::strong_ordering operator<=>(LegSet a, LegSet b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  std::uint64_t diff = a.bits_ ^ b.bits_;
  if (diff == 0) return std::strong_ordering::equal;
  std::uint64_t low = diff & (~diff + 1);
  return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string LegSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int l : elements()) {
    if (!first) os << ',';
    os << l;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace psifw
