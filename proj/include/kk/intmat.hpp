#pragma once

#include <string>
#include <vector>

#include "kk/bigint.hpp"

namespace kk {

/// Dense integer matrix with exact arbitrary-precision entries.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<BigInt>> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(r, std::vector<BigInt>(c, 0)) {}
  static IntMatrix identity(int n);

  BigInt& at(int i, int j) { return a[i][j]; }
  const BigInt& at(int i, int j) const { return a[i][j]; }

  IntMatrix multiply(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  /// "rows cols" header line then one line per row; round-trips with
  /// parse_matrix_text.
  std::string str() const;
};

/// Parses the plain-text matrix format. Throws UsageError on malformed
/// input.
IntMatrix parse_matrix_text(const std::string& text);
IntMatrix read_matrix_file(const std::string& path);

/// Exact determinant (fraction-free elimination).
BigInt determinant(const IntMatrix& m);

struct SmithResult {
  IntMatrix u, d, v;  // u*m*v = d
};

/// Smith normal form with unimodular transforms: d is diagonal with each
/// entry nonnegative and dividing the next.
SmithResult smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form, in divisibility order.
std::vector<BigInt> invariant_factors(const IntMatrix& m);

/// Exact inverse of a matrix with determinant +-1; throws Error otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

}  // namespace kk
