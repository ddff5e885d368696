#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kk/laurent.hpp"

namespace kk {

/// Upper-triangular 2x2 matrix over the Laurent ring; the (2,1) entry is
/// identically zero and is not stored.
struct TriMat2 {
  LaurentPoly a11, a12, a22;

  static TriMat2 identity();
  TriMat2 multiply(const TriMat2& o) const;
  /// Requires unit-monomial diagonal entries (always true for word images).
  TriMat2 inverse() const;
  bool operator==(const TriMat2& o) const {
    return a11 == o.a11 && a12 == o.a12 && a22 == o.a22;
  }
};

/// Freely reduced word in two letters. Encoding: +1 = a, -1 = a^{-1},
/// +2 = b, -2 = b^{-1}. Parsing accepts [abAB], whitespace, and "1" for the
/// empty word; reduction happens on construction.
struct FreeWord {
  std::vector<int> letters;

  static FreeWord parse(const std::string& text);
  FreeWord inverse() const;
  FreeWord concat(const FreeWord& o) const;
  long long exponent_sum(int letter) const;  // letter is 1 (a) or 2 (b)
  std::string str() const;
  bool operator==(const FreeWord& o) const { return letters == o.letters; }
};

/// Matrix image of a word under a -> [[x,0],[0,1]], b -> [[y,1],[0,1]].
TriMat2 magnus_eval(const FreeWord& w);

/// Image of (a^i b^j)^{-1} (a^{-1} b^{-1} a b) (a^i b^j).
TriMat2 magnus_dij(long long i, long long j);

/// The (1,2) entry the conjugated commutator must produce:
/// x^{-i} y^{-j-1} (1 - x^{-1}).
LaurentPoly dij_closed_form(long long i, long long j);

struct MembershipReport {
  long long a_sum = 0;
  long long b_sum = 0;
  bool diagonal_trivial = false;  // a11 == 1 after evaluation
  bool in_derived() const { return a_sum == 0 && b_sum == 0; }
  bool consistent() const { return in_derived() == diagonal_trivial; }
};

/// Derived-subgroup membership test: zero exponent sums, cross-checked
/// against the matrix diagonal.
MembershipReport derived_membership(const FreeWord& w);

struct IndependenceResult {
  bool independent = false;
  int rank = 0;
  /// When independent: one (input index, pivot monomial) pair per input.
  std::vector<std::pair<int, Monomial>> pivots;
  /// When dependent: integer coefficients, not all zero, gcd 1, first
  /// nonzero entry positive, with sum_k dependency[k] * polys[k] == 0.
  /// The relation is re-verified on the inputs before being returned.
  std::vector<BigInt> dependency;
};

/// Decides Z-linear independence of Laurent polynomials by exact
/// fraction-free row elimination over the common monomial support.
IndependenceResult z_linear_independence(const std::vector<LaurentPoly>& polys);

}  // namespace kk
