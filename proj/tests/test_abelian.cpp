#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "kk/abelian.hpp"
#include "kk/errors.hpp"
#include "kk/group.hpp"
#include "kk/intmat.hpp"
#include "kk/kk_embedding.hpp"
#include "kk/subgroups.hpp"
#include "test_util.hpp"

using namespace kk;
using kktest::load;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()),
              rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

BigInt det3_oracle(const IntMatrix& m) {
  auto& a = m.a;
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

bool is_diagonal_chain(const IntMatrix& d) {
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j)
      if (i != j && d.at(i, j) != 0) return false;
  BigInt prev = -1;
  for (int i = 0; i < std::min(d.rows, d.cols); ++i) {
    const BigInt& v = d.at(i, i);
    if (v < 0) return false;
    if (prev == 0 && v != 0) return false;
    if (prev > 0 && v != 0 && v % prev != 0) return false;
    prev = v;
  }
  return true;
}

bool unimodular(const IntMatrix& m) {
  BigInt d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form of the worked 2x2 example") {
  IntMatrix m = from_rows({{2, 4}, {6, 8}});
  SmithResult s = smith_normal_form(m);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  CHECK(s.u.multiply(m).multiply(s.v) == s.d);
  CHECK(unimodular(s.u));
  CHECK(unimodular(s.v));
  CHECK(invariant_factors(m) == std::vector<BigInt>{2, 4});
}

TEST_CASE("smith normal form on 500 seeded random matrices") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 500; ++t) {
    int r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        m.at(i, j) = static_cast<long long>(rng() % 19) - 9;
    SmithResult s = smith_normal_form(m);
    CHECK(s.u.multiply(m).multiply(s.v) == s.d);
    CHECK(is_diagonal_chain(s.d));
    CHECK(unimodular(s.u));
    CHECK(unimodular(s.v));
  }
}

TEST_CASE("determinant against a cofactor oracle and known values") {
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m.at(i, j) = static_cast<long long>(rng() % 21) - 10;
    CHECK(determinant(m) == det3_oracle(m));
  }
  CHECK(determinant(IntMatrix::identity(4)) == 1);
  CHECK(determinant(from_rows({{2, 0}, {0, 3}})) == 6);
}

TEST_CASE("inverse of unimodular matrices") {
  IntMatrix m = from_rows({{1, 2}, {3, 7}});  // det 1
  IntMatrix inv = inverse_unimodular(m);
  CHECK(m.multiply(inv) == IntMatrix::identity(2));
  CHECK(inv.multiply(m) == IntMatrix::identity(2));
  CHECK_THROWS_AS(inverse_unimodular(from_rows({{2, 0}, {0, 1}})), Error);
}

TEST_CASE("matrix text round trip") {
  IntMatrix m = from_rows({{2, 4}, {6, 8}});
  CHECK(parse_matrix_text(m.str()) == m);
  CHECK_THROWS_AS(parse_matrix_text("2 2\n1 2\n3\n"), UsageError);
  CHECK_THROWS_AS(parse_matrix_text("nonsense"), UsageError);
}

TEST_CASE("extending primitive vectors to unimodular bases") {
  LatticeBasis b = extend_to_basis({BigInt(2), BigInt(3)});
  CHECK(b.rank == 2);
  CHECK(b.basis.at(0, 0) == 2);
  CHECK(b.basis.at(0, 1) == 3);
  CHECK(unimodular(b.basis));
  CHECK(b.basis.multiply(b.inverse) == IntMatrix::identity(2));
  CHECK_THROWS_AS(extend_to_basis({BigInt(2), BigInt(4)}), NotPrimitive);

  std::mt19937 rng(501);
  int done = 0;
  while (done < 500) {
    int k = 1 + rng() % 6;
    std::vector<BigInt> g(k);
    BigInt gg = 0;
    for (auto& v : g) {
      v = static_cast<long long>(rng() % 41) - 20;
      gg = boost::multiprecision::gcd(gg, v < 0 ? BigInt(-v) : v);
    }
    if (gg == 0) continue;
    if (gg > 1)
      for (auto& v : g) v /= gg;
    LatticeBasis lb = extend_to_basis(g);
    CHECK(unimodular(lb.basis));
    for (int j = 0; j < k; ++j) CHECK(lb.basis.at(0, j) == g[j]);
    ++done;
  }
}

TEST_CASE("windowed basis rounds certify that no multiple hits the hyperplane") {
  std::vector<std::vector<BigInt>> targets = {
      {1, 1, 0, 0},
      {0, 0, 2, 3},
  };
  auto [basis, rep] = lemma_cb_rounds(4, targets, {2, 4});
  CHECK(rep.ok());
  CHECK(rep.positions == std::vector<int>{0, 2});
  CHECK(rep.bound == 100);
  CHECK(rep.unit_coordinates);
  CHECK(rep.multiples_avoided);
  CHECK(rep.all_m_argument);
  CHECK(unimodular(basis.basis));

  // Independent recheck: the coordinates of m*g in the new basis sum to m,
  // so no nonzero multiple lies in the sum-zero hyperplane.
  for (int ti = 0; ti < 2; ++ti) {
    for (int m = 1; m <= 20; ++m) {
      BigInt coordsum = 0;
      for (int col = 0; col < 4; ++col) {
        BigInt entry = 0;
        for (int j = 0; j < 4; ++j)
          entry += targets[ti][j] * BigInt(m) * basis.inverse.at(j, col);
        coordsum += entry;
      }
      CHECK(coordsum == m);
    }
  }
}

TEST_CASE("windowed rounds reject bad targets") {
  CHECK_THROWS_AS(lemma_cb_rounds(4, {{BigInt(1), 0, 1, 0}}, {2}),
                  WindowViolation);
  CHECK_THROWS_AS(lemma_cb_rounds(4, {{BigInt(2), 2, 0, 0}}, {2}),
                  NotPrimitive);
}

TEST_CASE("the quotient by the sum-zero hyperplane is infinite cyclic") {
  std::vector<std::vector<BigInt>> targets = {{1, 1, 0, 0}, {0, 0, 2, 3}};
  auto [basis, rep] = lemma_cb_rounds(4, targets, {2, 4});
  REQUIRE(rep.ok());
  RankOneReport r1 = quotient_rank_one_check(basis);
  CHECK(r1.ok());
  CHECK(r1.basis_rows_map_to_one);
  CHECK(r1.hyperplane_in_kernel);
  CHECK(r1.quotient_is_z);
  CHECK(r1.h_invariants == std::vector<BigInt>(3, BigInt(1)));
}

TEST_CASE("sylow decomposition splits a cyclic group by primes") {
  GroupPtr z6 = load("z6.txt");
  FiniteAbelianDecomp d = sylow_decomposition(full_subgroup(z6));
  CHECK(d.primes == std::vector<int>{2, 3});
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0].order() == 2);
  CHECK(d.blocks[1].order() == 3);
  CHECK(d.exponent == 6);

  GroupPtr s3 = load("s3.txt");
  CHECK_THROWS_AS(sylow_decomposition(full_subgroup(s3)), Error);
}

TEST_CASE("socle collects the elements killed by p") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  Subgroup s = socle_p(full_subgroup(z4), 2);
  CHECK(s.elements == std::vector<int>{0, 2});
  GroupPtr v4 = load("z2xz2.txt");
  CHECK(socle_p(full_subgroup(v4), 2).order() == 4);
}

TEST_CASE("subgroup enumeration matches the lattice oracle") {
  GroupPtr z6 = load("z6.txt");
  auto subs = all_subgroups(full_subgroup(z6));
  std::set<std::vector<int>> got;
  for (const auto& s : subs) got.insert(s.elements);
  CHECK(got == kktest::subgroup_lattice(z6));
  // Sorted by (order, elements): trivial first, full last.
  CHECK(subs.front().order() == 1);
  CHECK(subs.back().order() == 6);
  CHECK_THROWS_AS(all_subgroups(full_subgroup(z6), 4), SizeCap);

  GroupPtr a4 = load("a4.txt");
  Subgroup v4 = subgroup_generated(a4, {1, 2});
  CHECK(all_subgroups(v4).size() == 5);
}

TEST_CASE("maximal subgroup meeting the socle prescribedly") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  Subgroup a2 = full_subgroup(z4);
  Subgroup soc = socle_p(a2, 2);
  CHECK(maximal_Ep(a2, soc).order() == 4);
  CHECK(maximal_Ep(a2, trivial_subgroup(z4)).order() == 1);

  GroupPtr v4 = load("z2xz2.txt");
  Subgroup c = subgroup_generated(v4, {1});
  Subgroup e = maximal_Ep(full_subgroup(v4), c);
  CHECK(e.elements == c.elements);
}

TEST_CASE("modding subgroup construction for A3 x Z/2 inside S3 x Z/2") {
  GroupPtr g = load("s3xz2.txt");
  Subgroup a = subgroup_generated(g, {2, 1});
  REQUIRE(a.order() == 6);
  REQUIRE(is_normal(a));
  LemmaCcResult r = lemma_cc_C(g, a);
  CHECK(r.core_trivial);
  CHECK(r.exponent_divides);
  CHECK(r.primes == std::vector<int>{2, 3});
  CHECK_FALSE(r.certificate.empty());
  for (const auto& entry : r.certificate) {
    Subgroup n = subgroup_from_elements(g, entry.normal_elements);
    CHECK(is_normal(n));
    CHECK(n.order() > 1);
    CHECK_FALSE(r.c.contains(entry.witness));
    CHECK(n.contains(entry.witness));
    for (int x : n.elements) CHECK(a.contains(x));
  }
  // Independent core check: no nontrivial normal subgroup of G inside C.
  for (const auto& elems : kktest::normal_lattice(g)) {
    if (elems.size() <= 1) continue;
    bool inside = true;
    for (int x : elems)
      if (!r.c.contains(x)) inside = false;
    CHECK_FALSE(inside);
  }
}

TEST_CASE("modding subgroup for the base of Z/2 Wr Z/3 feeds the embedding") {
  GroupPtr g = load("z2wrz3.txt");
  Subgroup base = subgroup_generated(g, {4, g->conj(8, 4), g->conj(16, 4)});
  REQUIRE(base.order() == 8);
  LemmaCcResult r = lemma_cc_C(g, base);
  CHECK(r.core_trivial);
  CHECK(r.exponent_divides);
  CHECK(r.c.order() == 4);
  // Diagonal, sum-zero subspace, and the full base are normal inside A.
  CHECK(r.certificate.size() == 3);

  KKContext ctx = make_kk_context(g, base, r.c);
  CHECK(ctx.abar.group->order() == 2);
  Embedding emb = kk_reduced(ctx);
  CHECK(emb.verified());
}

TEST_CASE("elementary abelian squares admit no valid modding subgroup") {
  GroupPtr v4 = load("z2xz2.txt");
  try {
    lemma_cc_C(v4, full_subgroup(v4));
    FAIL("expected NoValidCp");
  } catch (const NoValidCp& e) {
    CHECK(e.prime == 2);
  }
}

TEST_CASE("abelian ambient still yields a trivial modding subgroup") {
  GroupPtr z6 = load("z6.txt");
  LemmaCcResult r = lemma_cc_C(z6, full_subgroup(z6));
  CHECK(r.core_trivial);
  CHECK(r.c.is_trivial());
  CHECK(r.certificate.size() == 3);  // Z/2, Z/3 and Z/6 itself
}

TEST_CASE("torsion and free parts of presented abelian groups") {
  TorsionComplement t = torsion_complement(from_rows({{2, 4}, {6, 8}}));
  CHECK(t.torsion_order == 8);
  CHECK(t.free_rank == 0);
  CHECK(t.t_orders == std::vector<BigInt>{2, 4});
  CHECK(t.basis_unimodular);

  TorsionComplement u = torsion_complement(from_rows({{2, 0}}));
  CHECK(u.torsion_order == 2);
  CHECK(u.free_rank == 1);
  REQUIRE(u.t_gens.size() == 1);
  REQUIRE(u.k_gens.size() == 1);
  CHECK(u.basis_unimodular);

  TorsionComplement f = torsion_complement(from_rows({{0, 0}}));
  CHECK(f.torsion_order == 1);
  CHECK(f.free_rank == 2);
}

TEST_CASE("scaling one free generator embeds with the exact index") {
  SelfIndexEmbedding e = self_index_embedding(from_rows({{2, 0}}), BigInt(3));
  CHECK(e.index == 3);
  CHECK(e.index_matches);
  CHECK(e.scaled_slot >= 0);

  SelfIndexEmbedding f = self_index_embedding(from_rows({{0, 0}}), BigInt(5));
  CHECK(f.index == 5);
  CHECK(f.index_matches);

  CHECK_THROWS_AS(self_index_embedding(from_rows({{2, 4}, {6, 8}}), BigInt(2)),
                  RankZero);
  CHECK_THROWS_AS(self_index_embedding(from_rows({{0, 0}}), BigInt(0)),
                  UsageError);
}

TEST_CASE("denominator-restricted rationals add and normalize") {
  DnRational half(1, 2, 2);
  CHECK(half.add(half) == DnRational(1, 1, 2));
  CHECK(DnRational(2, 4, 2) == half);
  CHECK(DnRational(1, -2, 2).num == -1);
  CHECK(DnRational(1, 2, 6).add(DnRational(1, 3, 6)) == DnRational(5, 6, 6));
  CHECK(half.str() == "1/2 base 2");
  CHECK_THROWS_AS(DnRational(1, 3, 2), Error);
  CHECK_THROWS_AS(DnRational(1, 0, 2), Error);
  CHECK_THROWS_AS(half.add(DnRational(1, 3, 6)), Error);
}
