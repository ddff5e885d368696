#include "kk/intmat.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "kk/errors.hpp"

namespace kk {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.a[i][i] = 1;
  return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& o) const {
  if (cols != o.rows) throw Error("matrix size mismatch in multiply");
  IntMatrix out(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < o.cols; ++j) out.a[i][j] += a[i][k] * o.a[k][j];
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.a[j][i] = a[i][j];
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << rows << " " << cols << "\n";
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j) os << " ";
      os << a[i][j];
    }
    os << "\n";
  }
  return os.str();
}

IntMatrix parse_matrix_text(const std::string& text) {
  std::istringstream is(text);
  long long r, c;
  if (!(is >> r >> c) || r < 0 || c < 0)
    throw UsageError("matrix text must start with 'rows cols'");
  IntMatrix m(static_cast<int>(r), static_cast<int>(c));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      std::string tok;
      if (!(is >> tok))
        throw UsageError("matrix text ended early at row " + std::to_string(i));
      try {
        m.a[i][j] = BigInt(tok);
      } catch (const std::exception&) {
        throw UsageError("bad matrix entry '" + tok + "'");
      }
    }
  std::string extra;
  if (is >> extra) throw UsageError("trailing token '" + extra + "' after matrix");
  return m;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error("determinant of a non-square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  auto w = m.a;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (w[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(w[k], w[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
      w[i][k] = 0;
    }
    prev = w[k][k];
  }
  return sign > 0 ? w[n - 1][n - 1] : BigInt(-w[n - 1][n - 1]);
}

namespace {

void add_row(IntMatrix& m, int dst, int src, const BigInt& factor) {
  for (int j = 0; j < m.cols; ++j) m.a[dst][j] += factor * m.a[src][j];
}

void add_col(IntMatrix& m, int dst, int src, const BigInt& factor) {
  for (int i = 0; i < m.rows; ++i) m.a[i][dst] += factor * m.a[i][src];
}

void swap_cols(IntMatrix& m, int x, int y) {
  if (x == y) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.a[i][x], m.a[i][y]);
}

BigInt big_abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult res{IntMatrix::identity(m.rows), m, IntMatrix::identity(m.cols)};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  const int lim = std::min(m.rows, m.cols);

  for (int t = 0; t < lim; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int pi = -1, pj = -1;
    BigInt best = 0;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j)
        if (d.a[i][j] != 0 && (pi < 0 || big_abs(d.a[i][j]) < best)) {
          best = big_abs(d.a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;  // trailing block is zero
    std::swap(d.a[t], d.a[pi]);
    std::swap(u.a[t], u.a[pi]);
    swap_cols(d, t, pj);
    swap_cols(v, t, pj);

    for (bool stable = false; !stable;) {
      stable = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.a[i][t] == 0) continue;
        BigInt q = d.a[i][t] / d.a[t][t];
        if (q != 0) {
          add_row(d, i, t, -q);
          add_row(u, i, t, -q);
        }
        if (d.a[i][t] != 0) {  // remainder is strictly smaller: promote it
          std::swap(d.a[t], d.a[i]);
          std::swap(u.a[t], u.a[i]);
          stable = false;
        }
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.a[t][j] == 0) continue;
        BigInt q = d.a[t][j] / d.a[t][t];
        if (q != 0) {
          add_col(d, j, t, -q);
          add_col(v, j, t, -q);
        }
        if (d.a[t][j] != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          stable = false;
        }
      }
      if (!stable) continue;
      // Pivot must divide the whole trailing block for the chain property.
      for (int i = t + 1; i < d.rows && stable; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d.a[i][j] % d.a[t][t] != 0) {
            add_row(d, t, i, 1);
            add_row(u, t, i, 1);
            stable = false;
            break;
          }
    }
    if (d.a[t][t] < 0) {
      for (int j = 0; j < d.cols; ++j) d.a[t][j] = -d.a[t][j];
      for (int j = 0; j < u.cols; ++j) u.a[t][j] = -u.a[t][j];
    }
  }
  return res;
}

std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  std::vector<BigInt> out;
  for (int t = 0; t < std::min(m.rows, m.cols); ++t)
    if (s.d.a[t][t] != 0) out.push_back(s.d.a[t][t]);
  return out;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error("inverse of a non-square matrix");
  SmithResult s = smith_normal_form(m);
  if (!(s.d == IntMatrix::identity(m.rows)))
    throw Error("matrix is not unimodular");
  return s.v.multiply(s.u);
}

}  // namespace kk
