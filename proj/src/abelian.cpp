#include "kk/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "kk/errors.hpp"

namespace kk {

LatticeBasis extend_to_basis(const std::vector<BigInt>& g) {
  const int k = static_cast<int>(g.size());
  if (k == 0) throw Error("empty vector cannot be extended");
  IntMatrix row(1, k);
  row.a[0] = g;
  SmithResult s = smith_normal_form(row);
  if (s.d.a[0][0] != 1) {
    std::ostringstream os;
    os << "vector is not primitive, gcd is " << s.d.a[0][0];
    throw NotPrimitive(os.str());
  }
  // g V = U^{-1} e1 = +-e1; flip V's first column so that g V = e1, making
  // g the first row of V^{-1}.
  IntMatrix v = s.v;
  if (s.u.a[0][0] == -1)
    for (int i = 0; i < k; ++i) v.a[i][0] = -v.a[i][0];
  LatticeBasis out;
  out.rank = k;
  out.basis = inverse_unimodular(v);
  out.inverse = v;
  out.target_rows = {0};
  if (out.basis.a[0] != g) throw Error("basis completion lost the input row");
  return out;
}

std::pair<LatticeBasis, HyperplaneReport> lemma_cb_rounds(
    int k, const std::vector<std::vector<BigInt>>& targets,
    const std::vector<int>& cutoffs, int bound) {
  if (k < 0) throw Error("negative rank");
  if (targets.size() != cutoffs.size())
    throw Error("one cutoff is required per target");
  int prev = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (cutoffs[i] <= prev || cutoffs[i] > k)
      throw WindowViolation("cutoffs must increase and stay within the rank");
    if (static_cast<int>(targets[i].size()) != k)
      throw WindowViolation("target " + std::to_string(i) +
                            " has the wrong length");
    for (int c = 0; c < k; ++c)
      if ((c < prev || c >= cutoffs[i]) && targets[i][c] != 0)
        throw WindowViolation("target " + std::to_string(i) +
                              " is supported outside its window");
    prev = cutoffs[i];
  }

  LatticeBasis out;
  out.rank = k;
  out.basis = IntMatrix::identity(k);
  prev = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const int start = prev;
    const int w = cutoffs[i] - prev;
    std::vector<BigInt> window(targets[i].begin() + start,
                               targets[i].begin() + cutoffs[i]);
    LatticeBasis block = extend_to_basis(window);  // may throw NotPrimitive
    for (int r = 0; r < w; ++r) {
      std::fill(out.basis.a[start + r].begin(), out.basis.a[start + r].end(),
                BigInt(0));
      for (int c = 0; c < w; ++c)
        out.basis.a[start + r][start + c] = block.basis.a[r][c];
    }
    out.target_rows.push_back(start);
    prev = cutoffs[i];
  }
  out.inverse = inverse_unimodular(out.basis);

  HyperplaneReport rep;
  rep.bound = bound;
  rep.positions = out.target_rows;
  rep.unit_coordinates = true;
  rep.multiples_avoided = true;
  rep.all_m_argument = true;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::vector<BigInt> u(k, 0);
    for (int j = 0; j < k; ++j)
      for (int c = 0; c < k; ++c) u[c] += targets[i][j] * out.inverse.a[j][c];
    for (int c = 0; c < k; ++c) {
      BigInt expect = c == out.target_rows[i] ? 1 : 0;
      if (u[c] != expect) rep.unit_coordinates = false;
    }
    BigInt sum = 0;
    for (const BigInt& x : u) sum += x;
    if (sum != 1) rep.all_m_argument = false;
    for (int m = 1; m <= bound; ++m) {
      BigInt msum = 0;
      for (const BigInt& x : u) msum += m * x;
      if (msum != m || msum == 0) rep.multiples_avoided = false;
    }
  }
  return {std::move(out), rep};
}

RankOneReport quotient_rank_one_check(const LatticeBasis& basis) {
  const int k = basis.rank;
  RankOneReport rep;
  rep.sigma.assign(k, 0);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < k; ++c) rep.sigma[j] += basis.inverse.a[j][c];

  rep.basis_rows_map_to_one = true;
  for (int i = 0; i < k; ++i) {
    BigInt val = 0;
    for (int j = 0; j < k; ++j) val += basis.basis.a[i][j] * rep.sigma[j];
    if (val != 1) rep.basis_rows_map_to_one = false;
  }

  rep.hyperplane_in_kernel = true;
  IntMatrix h(std::max(k - 1, 0), k);
  for (int i = 0; i + 1 < k; ++i) {
    BigInt val = 0;
    for (int j = 0; j < k; ++j) {
      h.a[i][j] = basis.basis.a[i][j] - basis.basis.a[i + 1][j];
      val += h.a[i][j] * rep.sigma[j];
    }
    if (val != 0) rep.hyperplane_in_kernel = false;
  }
  rep.h_invariants = invariant_factors(h);
  rep.quotient_is_z =
      static_cast<int>(rep.h_invariants.size()) == std::max(k - 1, 0) &&
      std::all_of(rep.h_invariants.begin(), rep.h_invariants.end(),
                  [](const BigInt& x) { return x == 1; });
  return rep;
}

namespace {

void require_abelian(const Subgroup& a, const char* what) {
  const FiniteGroup& g = *a.parent;
  for (int x : a.elements)
    for (int y : a.elements)
      if (g.mul(x, y) != g.mul(y, x))
        throw Error(std::string(what) + " is not abelian");
}

bool is_power_of(long long v, int p) {
  while (v % p == 0) v /= p;
  return v == 1;
}

bool subset(const Subgroup& inner, const Subgroup& outer) {
  for (int x : inner.elements)
    if (!outer.contains(x)) return false;
  return true;
}

}  // namespace

FiniteAbelianDecomp sylow_decomposition(const Subgroup& a) {
  require_abelian(a, "subgroup");
  FiniteAbelianDecomp out;
  out.a = a;
  const FiniteGroup& g = *a.parent;
  long long expo = 1;
  for (int x : a.elements) expo = std::lcm(expo, (long long)g.element_order(x));
  out.exponent = expo;

  long long rest = expo;
  for (long long p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      out.primes.push_back(static_cast<int>(p));
      while (rest % p == 0) rest /= p;
    }
  if (rest > 1) out.primes.push_back(static_cast<int>(rest));

  long long product = 1;
  for (int p : out.primes) {
    std::vector<int> elems;
    for (int x : a.elements)
      if (is_power_of(g.element_order(x), p)) elems.push_back(x);
    out.blocks.push_back(subgroup_from_elements(a.parent, elems));
    product *= out.blocks.back().order();
  }
  if (out.primes.empty()) {  // trivial A
    product = a.order();
  }
  if (product != a.order())
    throw Error("Sylow blocks do not multiply up to the subgroup order");
  return out;
}

Subgroup socle_p(const Subgroup& a_p, int p) {
  require_abelian(a_p, "p-block");
  if (!is_power_of(a_p.order(), p))
    throw Error("subgroup order is not a power of the prime");
  const FiniteGroup& g = *a_p.parent;
  std::vector<int> elems;
  for (int x : a_p.elements)
    if (g.power(x, p) == 0) elems.push_back(x);
  return subgroup_from_elements(a_p.parent, elems);
}

std::vector<Subgroup> all_subgroups(const Subgroup& ambient, int max_order) {
  if (ambient.order() > max_order)
    throw SizeCap("subgroup enumeration capped at order " +
                  std::to_string(max_order));
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  auto push = [&](const Subgroup& s) {
    if (seen.insert(s.elements).second) queue.push_back(s.elements);
  };
  push(trivial_subgroup(ambient.parent));
  while (!queue.empty()) {
    std::vector<int> base = std::move(queue.back());
    queue.pop_back();
    for (int x : ambient.elements) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<int> gens = base;
      gens.push_back(x);
      push(subgroup_generated(ambient.parent, gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& elems : seen)
    out.push_back(subgroup_from_elements(ambient.parent, elems));
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements < y.elements;
  });
  return out;
}

Subgroup maximal_Ep(const Subgroup& a_p, const Subgroup& c_p) {
  if (a_p.parent != c_p.parent)
    throw MixedParents("blocks belong to different groups");
  int p = 2;
  while (a_p.order() % p != 0 && p <= a_p.order()) ++p;
  if (a_p.order() == 1) p = 2;  // degenerate block
  Subgroup socle = socle_p(a_p, p);
  if (!subset(c_p, socle)) throw Error("C_p does not sit inside the socle");

  const Subgroup* best = nullptr;
  std::vector<Subgroup> subs = all_subgroups(a_p);
  for (const Subgroup& e : subs) {
    if (intersection(e, socle).elements != c_p.elements) continue;
    if (!best || e.order() > best->order() ||
        (e.order() == best->order() && e.elements < best->elements))
      best = &e;
  }
  if (!best) throw Error("no subgroup meets the socle in C_p");

  // Quotient postconditions: p-group, and its order-p part comes from the
  // socle's image.
  InducedGroup ind = subgroup_as_group(a_p);
  std::vector<int> local;
  for (int x : best->elements) local.push_back(ind.from_parent[x]);
  std::sort(local.begin(), local.end());
  Quotient quo = quotient_with_projection(
      subgroup_from_elements(ind.group, local));
  if (!is_power_of(quo.group->order(), p))
    throw Error("quotient by E_p is not a p-group");
  std::set<int> socle_image;
  for (int x : socle.elements)
    socle_image.insert(quo.projection.image[ind.from_parent[x]]);
  for (int q = 0; q < quo.group->order(); ++q)
    if (quo.group->element_order(q) == p && !socle_image.count(q))
      throw Error("order-p coset escapes the socle image");
  return *best;
}

namespace {

using FpVec = std::vector<int>;

int fp_norm(long long v, int p) {
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

int fp_inv(int a, int p) {
  int r = 1;
  long long base = fp_norm(a, p);
  int e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<int>((r * base) % p);
    base = (base * base) % p;
    e >>= 1;
  }
  return r;
}

// Row space over F_p with rows kept leading-one reduced.
struct FpEchelon {
  int p;
  std::vector<FpVec> rows;

  FpVec reduce(FpVec v) const {
    for (const FpVec& r : rows) {
      int lead = 0;
      while (r[lead] == 0) ++lead;
      if (v[lead] != 0) {
        int c = v[lead];
        for (std::size_t j = 0; j < v.size(); ++j)
          v[j] = fp_norm(v[j] - (long long)c * r[j], p);
      }
    }
    return v;
  }
  bool contains(const FpVec& v) const {
    FpVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
  }
  bool insert(const FpVec& v) {
    FpVec r = reduce(v);
    int lead = 0;
    while (lead < static_cast<int>(r.size()) && r[lead] == 0) ++lead;
    if (lead == static_cast<int>(r.size())) return false;
    int c = fp_inv(r[lead], p);
    for (int& x : r) x = fp_norm((long long)x * c, p);
    rows.push_back(std::move(r));
    return true;
  }
};

std::vector<FpVec> fp_inverse(const std::vector<FpVec>& mat, int p) {
  const int d = static_cast<int>(mat.size());
  std::vector<FpVec> w(d, FpVec(2 * d, 0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) w[i][j] = fp_norm(mat[i][j], p);
    w[i][d + i] = 1;
  }
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int i = c; i < d; ++i)
      if (w[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw Error("singular matrix over F_p");
    std::swap(w[c], w[piv]);
    int inv = fp_inv(w[c][c], p);
    for (int j = 0; j < 2 * d; ++j) w[c][j] = fp_norm((long long)w[c][j] * inv, p);
    for (int i = 0; i < d; ++i) {
      if (i == c || w[i][c] == 0) continue;
      int f = w[i][c];
      for (int j = 0; j < 2 * d; ++j)
        w[i][j] = fp_norm(w[i][j] - (long long)f * w[c][j], p);
    }
  }
  std::vector<FpVec> inv(d, FpVec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv[i][j] = w[i][d + j];
  return inv;
}

// Sum-zero hyperplane of the socle in a basis adapted to the minimal
// G-normal subgroups it contains. Throws NoValidCp when a minimal normal
// subgroup lands inside the hyperplane anyway.
Subgroup adapted_hyperplane(const GroupPtr& g, const Subgroup& socle, int p,
                            const std::vector<Subgroup>& normals) {
  if (socle.order() == 1) return socle;
  int d = 0;
  for (long long o = socle.order(); o > 1; o /= p) ++d;

  // Reference basis with full coordinate lookup, built incrementally.
  std::vector<int> ref;
  std::map<int, FpVec> coords{{0, FpVec{}}};
  for (int x : socle.elements) {
    if (coords.count(x)) continue;
    ref.push_back(x);
    std::map<int, FpVec> grown;
    for (const auto& [e, co] : coords)
      for (int t = 0; t < p; ++t) {
        FpVec c2 = co;
        c2.push_back(t);
        grown.emplace(g->mul(e, g->power(x, t)), std::move(c2));
      }
    coords = std::move(grown);
  }
  if (static_cast<int>(ref.size()) != d)
    throw Error("socle coordinateization failed");

  std::vector<Subgroup> inside;
  for (const Subgroup& n : normals)
    if (n.order() > 1 && subset(n, socle)) inside.push_back(n);
  std::vector<Subgroup> minimal;
  for (const Subgroup& n : inside) {
    bool min = true;
    for (const Subgroup& m : inside)
      if (m.order() < n.order() && subset(m, n)) min = false;
    if (min) minimal.push_back(n);
  }

  std::vector<FpVec> chosen;
  FpEchelon span{p, {}};
  for (const Subgroup& n : minimal) {
    for (int x : n.elements) {
      if (x == 0 || span.contains(coords.at(x))) continue;
      chosen.push_back(coords.at(x));
      span.insert(coords.at(x));
      break;
    }
  }
  for (int i = 0; i < d && static_cast<int>(chosen.size()) < d; ++i) {
    FpVec unit(d, 0);
    unit[i] = 1;
    if (!span.contains(unit)) {
      chosen.push_back(unit);
      span.insert(unit);
    }
  }

  std::vector<FpVec> binv = fp_inverse(chosen, p);
  std::vector<int> elems;
  for (int x : socle.elements) {
    const FpVec& lam = coords.at(x);
    long long sum = 0;
    for (int j = 0; j < d; ++j) {
      long long mu = 0;
      for (int i = 0; i < d; ++i) mu += (long long)lam[i] * binv[i][j];
      sum += fp_norm(mu, p);
    }
    if (sum % p == 0) elems.push_back(x);
  }
  Subgroup cp = subgroup_from_elements(socle.parent, elems);
  for (const Subgroup& n : minimal)
    if (subset(n, cp))
      throw NoValidCp("a minimal normal subgroup of order " +
                          std::to_string(n.order()) +
                          " lies inside the sum-zero hyperplane",
                      p);
  return cp;
}

}  // namespace

LemmaCcResult lemma_cc_C(const GroupPtr& g, const Subgroup& a) {
  if (a.parent != g) throw MixedParents("A belongs to a different group");
  if (!is_normal(a)) throw NotNormal("A is not normal in G");
  require_abelian(a, "A");

  LemmaCcResult res;
  if (a.order() == 1) {
    res.c = a;
    res.core_trivial = true;
    res.exponent_divides = true;
    return res;
  }

  FiniteAbelianDecomp decomp = sylow_decomposition(a);
  res.primes = decomp.primes;
  const long long n = decomp.exponent;
  std::vector<Subgroup> normals = normal_subgroups(g);

  for (std::size_t pi = 0; pi < decomp.primes.size(); ++pi) {
    const int p = decomp.primes[pi];
    Subgroup socle = socle_p(decomp.blocks[pi], p);
    Subgroup cp = adapted_hyperplane(g, socle, p, normals);
    if (!normal_core(cp).is_trivial())
      throw NoValidCp("the hyperplane C_p has a nontrivial core", p);
    Subgroup ep = maximal_Ep(decomp.blocks[pi], cp);
    Subgroup fp = ep;
    for (std::size_t qi = 0; qi < decomp.primes.size(); ++qi)
      if (qi != pi) fp = join(fp, decomp.blocks[qi]);
    res.c_blocks.push_back(std::move(cp));
    res.e_blocks.push_back(std::move(ep));
    res.f_blocks.push_back(std::move(fp));
  }

  Subgroup c = res.f_blocks[0];
  for (std::size_t i = 1; i < res.f_blocks.size(); ++i)
    c = intersection(c, res.f_blocks[i]);
  res.c = c;
  res.core_trivial = normal_core(res.c).is_trivial();
  if (!res.core_trivial)
    throw Error("intersection of the F_p kept a nontrivial core");

  res.exponent_divides = true;
  for (int x : a.elements)
    if (!res.c.contains(g->power(x, n))) res.exponent_divides = false;

  for (const Subgroup& nsub : normals) {
    if (nsub.order() <= 1 || !subset(nsub, a)) continue;
    int witness = -1;
    for (int x : nsub.elements)
      if (!res.c.contains(x)) {
        witness = x;
        break;
      }
    if (witness < 0)
      throw Error("normal subgroup inside C despite the trivial core");
    res.certificate.push_back({nsub.elements, witness});
  }
  return res;
}

TorsionComplement torsion_complement(const IntMatrix& relations) {
  const int k = relations.cols;
  SmithResult s = smith_normal_form(relations);
  IntMatrix vinv = inverse_unimodular(s.v);

  TorsionComplement out;
  out.diagonal.assign(k, 0);
  for (int t = 0; t < std::min(relations.rows, k); ++t)
    out.diagonal[t] = s.d.a[t][t];
  for (int i = 0; i < k; ++i) {
    if (out.diagonal[i] == 0) {
      out.k_gens.push_back(vinv.a[i]);
    } else if (out.diagonal[i] > 1) {
      out.t_gens.push_back(vinv.a[i]);
      out.t_orders.push_back(out.diagonal[i]);
      out.torsion_order *= out.diagonal[i];
    }
  }
  out.free_rank = static_cast<int>(out.k_gens.size());
  BigInt det = determinant(vinv);
  out.basis_unimodular = det == 1 || det == -1;
  return out;
}

SelfIndexEmbedding self_index_embedding(const IntMatrix& relations,
                                        const BigInt& m) {
  if (m <= 0) throw UsageError("the index m must be positive");
  const int k = relations.cols;
  SmithResult s = smith_normal_form(relations);
  std::vector<BigInt> diag(k, 0);
  for (int t = 0; t < std::min(relations.rows, k); ++t) diag[t] = s.d.a[t][t];

  int f = -1;
  for (int i = 0; i < k; ++i)
    if (diag[i] == 0) {
      f = i;
      break;
    }
  if (f < 0) throw RankZero("the presentation has no free part");

  // Index of the image subgroup, computed in Smith coordinates: relation
  // rows plus image-generator rows.
  int nonzero = 0;
  for (const BigInt& d : diag)
    if (d != 0) ++nonzero;
  IntMatrix stacked(nonzero + k, k);
  int r = 0;
  for (int i = 0; i < k; ++i)
    if (diag[i] != 0) stacked.a[r++][i] = diag[i];
  for (int i = 0; i < k; ++i) {
    stacked.a[r][i] = i == f ? m : BigInt(1);
    ++r;
  }
  std::vector<BigInt> inv = invariant_factors(stacked);
  SelfIndexEmbedding out;
  out.index = 1;
  for (const BigInt& d : inv) out.index *= d;
  out.index_matches =
      static_cast<int>(inv.size()) == k && out.index == m;
  out.scaled_slot = f;
  out.scaled_generator = inverse_unimodular(s.v).a[f];
  out.b_invariants = std::move(diag);
  return out;
}

DnRational::DnRational(BigInt n, BigInt d, long long base_) : base(base_) {
  if (d == 0) throw Error("zero denominator");
  if (base < 1) throw Error("base must be positive");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  BigInt g = boost::multiprecision::gcd(n < 0 ? BigInt(-n) : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  BigInt rem = d;
  for (BigInt f = boost::multiprecision::gcd(rem, BigInt(base)); f > 1;
       f = boost::multiprecision::gcd(rem, BigInt(base)))
    rem /= f;
  if (rem != 1)
    throw Error("denominator " + d.str() +
                " does not divide a power of " + std::to_string(base));
  num = std::move(n);
  den = std::move(d);
}

DnRational DnRational::add(const DnRational& o) const {
  if (base != o.base) throw Error("mismatched bases");
  return DnRational(num * o.den + o.num * den, den * o.den, base);
}

std::string DnRational::str() const {
  std::ostringstream os;
  os << num << "/" << den << " base " << base;
  return os.str();
}

}  // namespace kk
