#include "kk/fpmod.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "kk/errors.hpp"

namespace kk {

FpMatrix::FpMatrix(int p_, int dim_)
    : p(p_), dim(dim_), a(dim_, std::vector<int>(dim_, 0)) {}

FpMatrix FpMatrix::identity(int p, int dim) {
  FpMatrix m(p, dim);
  for (int i = 0; i < dim; ++i) m.a[i][i] = 1;
  return m;
}

FpMatrix FpMatrix::multiply(const FpMatrix& o) const {
  if (p != o.p || dim != o.dim) throw Error("matrix shape mismatch");
  FpMatrix out(p, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < dim; ++j)
        out.a[i][j] = static_cast<int>(
            (out.a[i][j] + static_cast<long long>(a[i][k]) * o.a[k][j]) % p);
    }
  return out;
}

FpMatrix FpMatrix::pow(long long e) const {
  if (e < 0) throw Error("negative exponent");
  FpMatrix out = identity(p, dim);
  FpMatrix base = *this;
  while (e > 0) {
    if (e & 1) out = out.multiply(base);
    base = base.multiply(base);
    e >>= 1;
  }
  return out;
}

std::vector<int> FpMatrix::apply(const std::vector<int>& v) const {
  std::vector<int> out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    long long acc = 0;
    for (int j = 0; j < dim; ++j) acc += static_cast<long long>(a[i][j]) * v[j];
    out[i] = static_cast<int>(acc % p);
  }
  return out;
}

bool FpMatrix::is_identity() const { return *this == identity(p, dim); }

long long FpMatrix::multiplicative_order(long long limit) const {
  FpMatrix m = *this;
  for (long long e = 1; e <= limit; ++e) {
    if (m.is_identity()) return e;
    m = m.multiply(*this);
  }
  throw Error("multiplicative order exceeds the limit");
}

namespace {

bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Polynomials over F_p, coefficients ascending, fixed length callers track.
using Poly = std::vector<int>;

// Remainder of num by monic div.
Poly poly_rem(Poly num, const Poly& div, int p) {
  const int dd = static_cast<int>(div.size()) - 1;
  for (int d = static_cast<int>(num.size()) - 1; d >= dd; --d) {
    int c = num[d];
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      int& slot = num[d - dd + j];
      slot = static_cast<int>(
          ((slot - static_cast<long long>(c) * div[j]) % p + p) % p);
    }
  }
  num.resize(dd);
  return num;
}

bool poly_is_zero(const Poly& f) {
  return std::all_of(f.begin(), f.end(), [](int c) { return c == 0; });
}

// Monic polynomial of degree d whose non-leading coefficients are the
// base-p digits of idx, first coefficient most significant.
Poly monic_from_index(long long idx, int d, int p) {
  Poly f(d + 1, 0);
  f[d] = 1;
  for (int i = 0; i < d; ++i) {
    f[d - 1 - i] = static_cast<int>(idx % p);
    idx /= p;
  }
  // digits were consumed least-significant-first, so f[0] varies fastest;
  // flip to make the tuple (c0, c1, ...) lexicographic in idx
  std::reverse(f.begin(), f.end() - 1);
  return f;
}

bool poly_irreducible(const Poly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int e = 1; 2 * e <= d; ++e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly g = monic_from_index(idx, e, p);
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

int rank_mod_p(std::vector<std::vector<int>> m, int p) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    // scale pivot row to leading 1
    int inv = 1;
    for (int t = 1; t < p; ++t)
      if (m[rank][c] * t % p == 1) inv = t;
    for (int j = 0; j < cols; ++j)
      m[rank][j] = static_cast<int>((static_cast<long long>(m[rank][j]) * inv) % p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      int f = m[r][c];
      for (int j = 0; j < cols; ++j)
        m[r][j] = static_cast<int>(
            ((m[r][j] - static_cast<long long>(f) * m[rank][j]) % p + p) % p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

FpBlock irreducible_action(int p, int q) {
  if (!is_prime(p) || !is_prime(q) || p == q)
    throw Error("p and q must be distinct primes");

  int d = 1;
  long long r = p % q;
  while (r != 1) {
    r = r * p % q;
    ++d;
  }

  Poly phi(q, 1);  // 1 + x + ... + x^{q-1}
  long long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  Poly found;
  for (long long idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(idx, d, p);
    if (!poly_is_zero(poly_rem(phi, f, p))) continue;
    if (!poly_irreducible(f, p))
      throw Error("degree-d divisor of the cyclotomic factor is reducible");
    found = f;
    break;
  }
  if (found.empty()) throw Error("no irreducible factor of the right degree");

  FpBlock block;
  block.q = q;
  block.dim = d;
  block.min_poly = found;
  block.action = FpMatrix(p, d);
  for (int i = 0; i + 1 < d; ++i) block.action.a[i + 1][i] = 1;
  for (int i = 0; i < d; ++i)
    block.action.a[i][d - 1] = ((-found[i]) % p + p) % p;

  if (block.action.multiplicative_order(q + 1) != q)
    throw Error("companion matrix order is not q");
  // 1 must not be an eigenvalue: M - I nonsingular.
  std::vector<std::vector<int>> mi = block.action.a;
  for (int i = 0; i < d; ++i) mi[i][i] = ((mi[i][i] - 1) % p + p) % p;
  if (rank_mod_p(mi, p) != d)
    throw Error("action fixes a nonzero vector");
  return block;
}

FpModuleDecomp build_decomp(int p, std::vector<int> s) {
  if (!is_prime(p)) throw Error("p must be prime");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw Error("duplicate primes in S");
  FpModuleDecomp out;
  out.p = p;
  for (int q : s) out.blocks.push_back(irreducible_action(p, q));
  for (const FpBlock& b : out.blocks) out.total_dim += b.dim;
  out.action = FpMatrix(p, out.total_dim);
  int off = 0;
  for (const FpBlock& b : out.blocks) {
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j)
        out.action.a[off + i][off + j] = b.action.a[i][j];
    off += b.dim;
  }
  return out;
}

int TruncatedG::encode(long long k, const std::vector<int>& v) const {
  long long idx = k;
  for (int digit : v) idx = idx * decomp.p + digit;
  return static_cast<int>(idx);
}

std::pair<long long, std::vector<int>> TruncatedG::decode(int idx) const {
  const int d = decomp.total_dim;
  std::vector<int> v(d);
  long long rest = idx;
  for (int i = d - 1; i >= 0; --i) {
    v[i] = static_cast<int>(rest % decomp.p);
    rest /= decomp.p;
  }
  return {rest, std::move(v)};
}

TruncatedG build_truncated_G(int p, std::vector<int> s,
                             std::size_t max_cells) {
  TruncatedG out;
  out.decomp = build_decomp(p, s);
  const int d = out.decomp.total_dim;
  out.n = 1;
  for (const FpBlock& b : out.decomp.blocks) out.n *= b.q;

  long long space = 1;
  for (int i = 0; i < d; ++i) {
    space *= p;
    if (space > 1'000'000) throw SizeCap("base space too large");
  }
  const long long order = out.n * space;
  if (static_cast<unsigned long long>(order) * order > max_cells)
    throw SizeCap("truncation of order " + std::to_string(order) +
                  " exceeds the table cap");
  const int big = static_cast<int>(order);

  std::vector<FpMatrix> inv_pow(out.n, FpMatrix::identity(p, d));
  for (long long k = 1; k < out.n; ++k)
    inv_pow[k] = inv_pow[k - 1].multiply(out.decomp.action);
  // inv_pow[k] currently holds M^k; the product rule needs M^{-k} = M^{n-k}
  std::reverse(inv_pow.begin() + 1, inv_pow.end());

  std::vector<std::pair<long long, std::vector<int>>> parts(big);
  for (int i = 0; i < big; ++i) parts[i] = out.decode(i);

  std::vector<int> flat(static_cast<std::size_t>(big) * big);
  for (int i1 = 0; i1 < big; ++i1) {
    const auto& [k1, v1] = parts[i1];
    for (int i2 = 0; i2 < big; ++i2) {
      const auto& [k2, v2] = parts[i2];
      std::vector<int> w = inv_pow[k2].apply(v1);
      for (int t = 0; t < d; ++t) w[t] = (w[t] + v2[t]) % p;
      flat[static_cast<std::size_t>(i1) * big + i2] =
          out.encode((k1 + k2) % out.n, w);
    }
  }
  std::vector<std::string> labels(big);
  for (int i = 0; i < big; ++i) {
    std::string lab = "(" + std::to_string(parts[i].first) + ";";
    for (int t = 0; t < d; ++t) lab += static_cast<char>('0' + parts[i].second[t]);
    labels[i] = lab + ")";
  }
  out.realized = FiniteGroup::trusted(std::move(flat), big, std::move(labels));

  std::vector<int> base_elems(space);
  std::iota(base_elems.begin(), base_elems.end(), 0);
  out.base = subgroup_from_elements(out.realized, base_elems);
  out.b_gen = out.encode(out.n > 1 ? 1 : 0, std::vector<int>(d, 0));

  // Structural checks: abelian normal base, cyclic quotient of order n.
  const FiniteGroup& g = *out.realized;
  for (int x : out.base.elements)
    for (int y : out.base.elements)
      if (g.mul(x, y) != g.mul(y, x)) throw Error("base is not abelian");
  if (!is_normal(out.base)) throw Error("base is not normal");
  Quotient quo = quotient_with_projection(out.base);
  if (quo.group->order() != out.n ||
      quo.group->element_order(quo.projection.image[out.b_gen]) != out.n)
    throw Error("quotient by the base is not cyclic of order n");
  return out;
}

namespace {

int vec_encode(const std::vector<int>& v, int p) {
  int idx = 0;
  for (int digit : v) idx = idx * p + digit;
  return idx;
}

std::vector<int> vec_decode(int idx, int d, int p) {
  std::vector<int> v(d);
  for (int i = d - 1; i >= 0; --i) {
    v[i] = idx % p;
    idx /= p;
  }
  return v;
}

// All elements of the span of `rows`, as encoded vectors, sorted.
std::vector<int> span_elements(const std::vector<std::vector<int>>& rows,
                               int d, int p) {
  std::set<int> seen{0};
  for (const auto& r : rows) {
    std::set<int> grown;
    for (int e : seen) {
      std::vector<int> base = vec_decode(e, d, p);
      for (int t = 0; t < p; ++t) {
        std::vector<int> w = base;
        for (int i = 0; i < d; ++i) w[i] = (w[i] + t * r[i]) % p;
        grown.insert(vec_encode(w, p));
      }
    }
    seen = std::move(grown);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

HyperplaneCert hyperplane_C(const FpModuleDecomp& decomp) {
  const int d = decomp.total_dim;
  const int p = decomp.p;
  if (d < 1) throw Error("hyperplane needs dimension at least 1");
  HyperplaneCert cert;
  cert.p = p;
  cert.dim = d;
  for (int i = 0; i + 1 < d; ++i) {
    std::vector<int> row(d, 0);
    row[i] = 1;
    row[i + 1] = p - 1;
    cert.basis.push_back(std::move(row));
  }
  cert.codim_one = rank_mod_p(cert.basis, p) == d - 1;

  cert.blocks_escape = true;
  int off = 0;
  for (const FpBlock& b : decomp.blocks) {
    // the block's first basis vector has coordinate sum 1, outside C
    std::vector<int> unit(d, 0);
    unit[off] = 1;
    int sum = 0;
    for (int x : unit) sum += x;
    if (sum % p == 0) cert.blocks_escape = false;
    off += b.dim;
  }

  long long space = 1;
  for (int i = 0; i < d; ++i) space *= p;
  if (space > 64) return cert;  // brute-force scan only at tiny scale
  cert.scan_done = true;
  cert.scan_clean = true;

  // Distinct submodules: spans of orbits, closed under pairwise joins.
  std::map<std::vector<int>, std::vector<std::vector<int>>> mods;  // elements -> basis
  for (int seed = 1; seed < space; ++seed) {
    std::vector<std::vector<int>> rows;
    std::vector<int> cur = vec_decode(seed, d, p);
    for (long long k = 0;; ++k) {
      std::vector<std::vector<int>> probe = rows;
      probe.push_back(cur);
      if (rank_mod_p(probe, p) == static_cast<int>(rows.size())) break;
      rows.push_back(cur);
      cur = decomp.action.apply(cur);
      if (k > space) break;  // safety; orbit spans stabilize long before
    }
    mods.emplace(span_elements(rows, d, p), rows);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<std::vector<int>>> bases;
    for (const auto& [elems, basis] : mods) bases.push_back(basis);
    for (std::size_t i = 0; i < bases.size(); ++i)
      for (std::size_t j = i + 1; j < bases.size(); ++j) {
        std::vector<std::vector<int>> join = bases[i];
        join.insert(join.end(), bases[j].begin(), bases[j].end());
        auto elems = span_elements(join, d, p);
        if (mods.emplace(std::move(elems), std::move(join)).second) grew = true;
      }
  }

  std::set<std::vector<int>> sub_sums;
  for (int mask = 0; mask < (1 << decomp.blocks.size()); ++mask) {
    std::vector<std::vector<int>> rows;
    int off2 = 0;
    for (std::size_t bi = 0; bi < decomp.blocks.size(); ++bi) {
      if (mask & (1 << bi))
        for (int i = 0; i < decomp.blocks[bi].dim; ++i) {
          std::vector<int> row(d, 0);
          row[off2 + i] = 1;
          rows.push_back(std::move(row));
        }
      off2 += decomp.blocks[bi].dim;
    }
    sub_sums.insert(span_elements(rows, d, p));
  }

  cert.only_sub_sums = true;
  for (const auto& [elems, basis] : mods) {
    if (elems.size() > 1) ++cert.submodules_found;
    if (!sub_sums.count(elems)) cert.only_sub_sums = false;
    if (elems.size() <= 1) continue;
    bool inside = true;
    for (int e : elems) {
      std::vector<int> v = vec_decode(e, d, p);
      int sum = 0;
      for (int x : v) sum += x;
      if (sum % p != 0) {
        inside = false;
        break;
      }
    }
    if (inside) cert.scan_clean = false;
  }
  return cert;
}

Theorem3Result theorem3_embed(int p, std::vector<int> s,
                              std::size_t max_cells) {
  TruncatedG trunc = build_truncated_G(p, s, max_cells);
  const int d = trunc.decomp.total_dim;

  HyperplaneCert cert;
  Subgroup a = trunc.base;
  Subgroup c = trivial_subgroup(trunc.realized);
  if (d == 0) {  // empty S: trivial module, degenerate but well-defined
    cert.p = p;
    cert.codim_one = true;
    cert.blocks_escape = true;
    cert.scan_done = true;
    cert.scan_clean = true;
    cert.only_sub_sums = true;
  } else {
    cert = hyperplane_C(trunc.decomp);
    if (!cert.ok()) throw Error("hyperplane certificate failed");
    std::vector<int> c_elems;
    for (int x : trunc.base.elements) {
      std::vector<int> v = trunc.decode(x).second;
      int sum = 0;
      for (int t : v) sum += t;
      if (sum % p == 0) c_elems.push_back(x);
    }
    c = subgroup_from_elements(trunc.realized, c_elems);
  }

  KKContext ctx = make_kk_context(trunc.realized, a, c);
  if (d > 0 && ctx.abar.group->order() != p)
    throw Error("base quotient is not of order p");
  Embedding emb = kk_reduced(ctx, max_cells);
  return Theorem3Result{std::move(trunc), std::move(cert), std::move(ctx),
                        std::move(emb)};
}

std::vector<long long> fingerprint(int p, std::vector<int> s) {
  FpModuleDecomp decomp = build_decomp(p, s);
  long long n = 1;
  for (const FpBlock& b : decomp.blocks) n *= b.q;

  // fixes[bi][k]: whether block bi's action to the k-th power is identity
  std::vector<std::vector<char>> fixes(decomp.blocks.size());
  for (std::size_t bi = 0; bi < decomp.blocks.size(); ++bi) {
    const FpBlock& b = decomp.blocks[bi];
    FpMatrix m = FpMatrix::identity(p, b.dim);
    fixes[bi].resize(n);
    for (long long k = 0; k < n; ++k) {
      fixes[bi][k] = m.is_identity() ? 1 : 0;
      m = m.multiply(b.action);
    }
  }

  std::vector<long long> out;
  for (int mask = 0; mask < (1 << decomp.blocks.size()); ++mask) {
    long long cnt = 0;
    for (long long k = 0; k < n; ++k) {
      bool all = true;
      for (std::size_t bi = 0; bi < decomp.blocks.size(); ++bi)
        if ((mask & (1 << bi)) && !fixes[bi][k]) {
          all = false;
          break;
        }
      if (all) ++cnt;
    }
    out.push_back(n / cnt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LocalStructureReport local_structure_check(int p, std::vector<int> s,
                                            unsigned seed, int trials) {
  TruncatedG trunc = build_truncated_G(p, s);
  const FiniteGroup& g = *trunc.realized;
  const int big = g.order();
  std::mt19937 rng(seed);

  LocalStructureReport rep;
  rep.all_ok = true;
  for (int t = 0; t < trials; ++t) {
    LocalStructureReport::Trial trial;
    int ngens = (t % 3 == 0) ? 1 : 2;
    for (int i = 0; i < ngens; ++i)
      trial.gens.push_back(static_cast<int>(rng() % big));

    Subgroup k = subgroup_generated(trunc.realized, trial.gens);
    std::vector<int> u;
    for (int x : k.elements)
      if (trunc.decode(x).first == 0) u.push_back(x);

    trial.base_part_normal = true;
    for (int x : k.elements)
      for (int uu : u)
        if (!std::binary_search(u.begin(), u.end(), g.conj(x, uu)))
          trial.base_part_normal = false;

    std::set<long long> tops;
    for (int x : k.elements) tops.insert(trunc.decode(x).first);
    trial.quotient_cyclic =
        tops.size() * u.size() == k.elements.size();

    // T = blocks touched by the generators' base parts
    std::vector<char> in_t(trunc.decomp.blocks.size(), 0);
    auto mark = [&](const std::vector<int>& v) {
      int off = 0;
      for (std::size_t bi = 0; bi < trunc.decomp.blocks.size(); ++bi) {
        for (int i = 0; i < trunc.decomp.blocks[bi].dim; ++i)
          if (v[off + i] != 0) in_t[bi] = 1;
        off += trunc.decomp.blocks[bi].dim;
      }
    };
    for (int ge : trial.gens) mark(trunc.decode(ge).second);
    trial.inside_sub_sum = true;
    for (int x : k.elements) {
      std::vector<int> v = trunc.decode(x).second;
      int off = 0;
      for (std::size_t bi = 0; bi < trunc.decomp.blocks.size(); ++bi) {
        for (int i = 0; i < trunc.decomp.blocks[bi].dim; ++i)
          if (v[off + i] != 0 && !in_t[bi]) trial.inside_sub_sum = false;
        off += trunc.decomp.blocks[bi].dim;
      }
    }
    rep.all_ok = rep.all_ok && trial.base_part_normal &&
                 trial.quotient_cyclic && trial.inside_sub_sum;
    rep.trials.push_back(std::move(trial));
  }
  return rep;
}

}  // namespace kk
