#include "kk/magnus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kk/errors.hpp"

namespace kk {

TriMat2 TriMat2::identity() {
  TriMat2 m;
  m.a11 = LaurentPoly::one();
  m.a22 = LaurentPoly::one();
  return m;
}

TriMat2 TriMat2::multiply(const TriMat2& o) const {
  TriMat2 m;
  m.a11 = a11 * o.a11;
  m.a12 = a11 * o.a12 + a12 * o.a22;
  m.a22 = a22 * o.a22;
  return m;
}

TriMat2 TriMat2::inverse() const {
  TriMat2 m;
  m.a11 = a11.unit_inverse();
  m.a22 = a22.unit_inverse();
  m.a12 = -(m.a11 * a12 * m.a22);
  return m;
}

FreeWord FreeWord::parse(const std::string& text) {
  FreeWord w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '1') continue;
    int code;
    switch (ch) {
      case 'a': code = 1; break;
      case 'A': code = -1; break;
      case 'b': code = 2; break;
      case 'B': code = -2; break;
      default:
        throw UsageError(std::string("unrecognized letter '") + ch +
                         "' in word at position " + std::to_string(i));
    }
    if (!w.letters.empty() && w.letters.back() == -code)
      w.letters.pop_back();
    else
      w.letters.push_back(code);
  }
  return w;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    w.letters.push_back(-*it);
  return w;
}

FreeWord FreeWord::concat(const FreeWord& o) const {
  FreeWord w = *this;
  for (int code : o.letters) {
    if (!w.letters.empty() && w.letters.back() == -code)
      w.letters.pop_back();
    else
      w.letters.push_back(code);
  }
  return w;
}

long long FreeWord::exponent_sum(int letter) const {
  long long sum = 0;
  for (int code : letters) {
    if (code == letter) ++sum;
    if (code == -letter) --sum;
  }
  return sum;
}

std::string FreeWord::str() const {
  if (letters.empty()) return "1";
  std::string out;
  for (int code : letters) {
    switch (code) {
      case 1: out += 'a'; break;
      case -1: out += 'A'; break;
      case 2: out += 'b'; break;
      case -2: out += 'B'; break;
    }
  }
  return out;
}

namespace {

TriMat2 letter_matrix(int code) {
  TriMat2 m = TriMat2::identity();
  switch (code) {
    case 1:
      m.a11 = LaurentPoly::monomial(1, 1, 0);
      break;
    case -1:
      m.a11 = LaurentPoly::monomial(1, -1, 0);
      break;
    case 2:
      m.a11 = LaurentPoly::monomial(1, 0, 1);
      m.a12 = LaurentPoly::one();
      break;
    case -2:
      m.a11 = LaurentPoly::monomial(1, 0, -1);
      m.a12 = -LaurentPoly::monomial(1, 0, -1);
      break;
    default:
      throw Error("bad letter code");
  }
  return m;
}

FreeWord letter_power(int letter, long long e) {
  FreeWord w;
  int code = e >= 0 ? letter : -letter;
  long long n = e >= 0 ? e : -e;
  w.letters.assign(static_cast<std::size_t>(n), code);
  return w;
}

}  // namespace

TriMat2 magnus_eval(const FreeWord& w) {
  TriMat2 m = TriMat2::identity();
  for (int code : w.letters) m = m.multiply(letter_matrix(code));
  return m;
}

TriMat2 magnus_dij(long long i, long long j) {
  FreeWord c = letter_power(1, i).concat(letter_power(2, j));
  FreeWord comm = FreeWord::parse("ABab");
  return magnus_eval(c.inverse().concat(comm).concat(c));
}

LaurentPoly dij_closed_form(long long i, long long j) {
  return LaurentPoly::monomial(1, -i, -j - 1) -
         LaurentPoly::monomial(1, -i - 1, -j - 1);
}

MembershipReport derived_membership(const FreeWord& w) {
  MembershipReport rep;
  rep.a_sum = w.exponent_sum(1);
  rep.b_sum = w.exponent_sum(2);
  TriMat2 m = magnus_eval(w);
  if (!m.a22.is_one()) throw Error("word image lost its unit corner");
  rep.diagonal_trivial = m.a11.is_one();
  return rep;
}

namespace {

using Row = std::vector<BigInt>;

void normalize_row(Row& row) {
  BigInt g = 0;
  for (const BigInt& v : row) g = boost::multiprecision::gcd(g, v);
  if (g > 1)
    for (BigInt& v : row) v /= g;
}

}  // namespace

IndependenceResult z_linear_independence(const std::vector<LaurentPoly>& polys) {
  IndependenceResult res;
  const int n = static_cast<int>(polys.size());
  if (n == 0) {
    res.independent = true;
    return res;
  }

  std::set<Monomial> support;
  for (const auto& p : polys)
    for (const auto& [mono, c] : p.terms()) support.insert(mono);
  std::vector<Monomial> monos(support.begin(), support.end());
  const int m = static_cast<int>(monos.size());

  // Rows are the inputs over the joint monomial basis, augmented with the
  // identity so every row stays an explicit Z-combination of the inputs.
  std::vector<Row> rows(n, Row(m + n, 0));
  for (int r = 0; r < n; ++r) {
    for (const auto& [mono, c] : polys[r].terms()) {
      int col = static_cast<int>(
          std::lower_bound(monos.begin(), monos.end(), mono) - monos.begin());
      rows[r][col] = c;
    }
    rows[r][m + r] = 1;
  }

  std::vector<int> pivot_col(n, -1);
  std::vector<bool> is_pivot(n, false);
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = 0; r < n; ++r)
      if (!is_pivot[r] && rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    is_pivot[piv] = true;
    pivot_col[piv] = col;
    const BigInt pv = rows[piv][col];
    for (int r = 0; r < n; ++r) {
      if (r == piv || rows[r][col] == 0 || is_pivot[r]) continue;
      const BigInt rv = rows[r][col];
      for (int k = 0; k < m + n; ++k)
        rows[r][k] = pv * rows[r][k] - rv * rows[piv][k];
      normalize_row(rows[r]);
    }
  }

  int first_zero = -1;
  for (int r = 0; r < n; ++r) {
    if (is_pivot[r]) continue;
    for (int k = 0; k < m; ++k)
      if (rows[r][k] != 0) throw Error("elimination left a nonzero free row");
    if (first_zero < 0) first_zero = r;
  }

  if (first_zero < 0) {
    res.independent = true;
    res.rank = n;
    for (int r = 0; r < n; ++r)
      res.pivots.emplace_back(r, monos[static_cast<std::size_t>(pivot_col[r])]);
    return res;
  }

  res.independent = false;
  res.rank = n - 1;
  {
    int rank = 0;
    for (int r = 0; r < n; ++r)
      if (is_pivot[r]) ++rank;
    res.rank = rank;
  }
  Row dep(rows[first_zero].begin() + m, rows[first_zero].end());
  normalize_row(dep);
  for (const BigInt& v : dep)
    if (v != 0) {
      if (v < 0)
        for (BigInt& w : dep) w = -w;
      break;
    }
  LaurentPoly combo;
  for (int k = 0; k < n; ++k)
    combo = combo + LaurentPoly::constant(dep[k]) * polys[k];
  if (!combo.is_zero()) throw Error("dependency failed recomputation");
  res.dependency = std::move(dep);
  return res;
}

}  // namespace kk
