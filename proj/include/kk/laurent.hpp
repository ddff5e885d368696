#pragma once

#include <map>
#include <string>
#include <utility>

#include "kk/bigint.hpp"

namespace kk {

/// Exponent pair (x, y) of a two-variable Laurent monomial.
using Monomial = std::pair<long long, long long>;

/// Element of Z[x^{+-1}, y^{+-1}] with exact integer coefficients.
/// Zero coefficients are never stored, so map equality is poly equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly constant(const BigInt& c);
  static LaurentPoly monomial(const BigInt& c, long long xe, long long ye);
  static LaurentPoly one() { return constant(1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// Single term with coefficient +1 or -1: a unit of the Laurent ring.
  bool is_unit_monomial() const;
  /// Multiplicative inverse; throws Error unless is_unit_monomial().
  LaurentPoly unit_inverse() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  const std::map<Monomial, BigInt>& terms() const { return terms_; }

  /// Deterministic rendering, terms in ascending (x, y) exponent order,
  /// e.g. "-x^-1*y^-1 + y^-1".
  std::string str() const;

 private:
  void prune();
  std::map<Monomial, BigInt> terms_;
};

}  // namespace kk
