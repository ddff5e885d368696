#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "kk/errors.hpp"
#include "kk/laurent.hpp"
#include "kk/magnus.hpp"

using namespace kk;

namespace {

LaurentPoly mono(long long c, long long xe, long long ye) {
  return LaurentPoly::monomial(BigInt(c), xe, ye);
}

// Independent construction of the matrix of a single letter.
TriMat2 letter_matrix(int code) {
  TriMat2 m = TriMat2::identity();
  switch (code) {
    case 1:  // a = [[x, 0], [0, 1]]
      m.a11 = mono(1, 1, 0);
      break;
    case -1:
      m.a11 = mono(1, -1, 0);
      break;
    case 2:  // b = [[y, 1], [0, 1]]
      m.a11 = mono(1, 0, 1);
      m.a12 = LaurentPoly::one();
      break;
    case -2:  // b^{-1} = [[y^{-1}, -y^{-1}], [0, 1]]
      m.a11 = mono(1, 0, -1);
      m.a12 = mono(-1, 0, -1);
      break;
  }
  return m;
}

TriMat2 eval_oracle(const FreeWord& w) {
  TriMat2 m = TriMat2::identity();
  for (int code : w.letters) m = m.multiply(letter_matrix(code));
  return m;
}

std::string random_word(std::mt19937& rng, int len) {
  static const char alphabet[] = {'a', 'A', 'b', 'B'};
  std::string s;
  for (int i = 0; i < len; ++i) s += alphabet[rng() % 4];
  return s;
}

}  // namespace

TEST_CASE("word parsing reduces freely") {
  CHECK(FreeWord::parse("aA").letters.empty());
  CHECK(FreeWord::parse("1").letters.empty());
  CHECK(FreeWord::parse("a b  \tA").letters == std::vector<int>{1, 2, -1});
  CHECK(FreeWord::parse("abBA").letters.empty());
  CHECK(FreeWord::parse("abAB").letters == std::vector<int>{1, 2, -1, -2});
  CHECK(FreeWord::parse("aBBba").letters == std::vector<int>{1, -2, 1});
  CHECK_THROWS_AS(FreeWord::parse("axb"), UsageError);
}

TEST_CASE("word algebra: inverse, concat, exponent sums, rendering") {
  FreeWord w = FreeWord::parse("aabA");
  CHECK(w.concat(w.inverse()).letters.empty());
  CHECK(w.inverse().concat(w).letters.empty());
  CHECK(w.exponent_sum(1) == 1);
  CHECK(w.exponent_sum(2) == 1);
  CHECK(FreeWord::parse(w.str()) == w);
  CHECK(FreeWord::parse("1").str() == "1");
}

TEST_CASE("letter images match the defining matrices") {
  TriMat2 a = magnus_eval(FreeWord::parse("a"));
  CHECK(a.a11 == mono(1, 1, 0));
  CHECK(a.a12.is_zero());
  CHECK(a.a22.is_one());
  TriMat2 b = magnus_eval(FreeWord::parse("b"));
  CHECK(b.a11 == mono(1, 0, 1));
  CHECK(b.a12.is_one());
  CHECK(b.a22.is_one());
}

TEST_CASE("commutator image has the closed-form off-diagonal entry") {
  // [a,b] = a^{-1} b^{-1} a b, the word ABab.
  TriMat2 m = magnus_eval(FreeWord::parse("ABab"));
  CHECK(m.a11.is_one());
  CHECK(m.a22.is_one());
  LaurentPoly want = mono(1, 0, -1) + mono(-1, -1, -1);  // y^{-1}(1 - x^{-1})
  CHECK(m.a12 == want);

  // The reversed commutator a b a^{-1} b^{-1} gives a different entry.
  TriMat2 r = magnus_eval(FreeWord::parse("abAB"));
  CHECK(r.a11.is_one());
  CHECK(r.a12 == mono(1, 1, 0) + mono(-1, 0, 0));  // x - 1
}

TEST_CASE("evaluation is a homomorphism on seeded random pairs") {
  std::mt19937 rng(12345);
  for (int t = 0; t < 200; ++t) {
    FreeWord u = FreeWord::parse(random_word(rng, 1 + t % 9));
    FreeWord v = FreeWord::parse(random_word(rng, 1 + (t * 7) % 9));
    TriMat2 lhs = magnus_eval(u.concat(v));
    TriMat2 rhs = magnus_eval(u).multiply(magnus_eval(v));
    CHECK(lhs == rhs);
    CHECK(magnus_eval(u) == eval_oracle(u));
  }
}

TEST_CASE("inverse matrices multiply to the identity") {
  std::mt19937 rng(99);
  for (int t = 0; t < 50; ++t) {
    FreeWord u = FreeWord::parse(random_word(rng, 1 + t % 12));
    TriMat2 m = magnus_eval(u);
    CHECK(m.multiply(m.inverse()) == TriMat2::identity());
    CHECK(magnus_eval(u.inverse()) == m.inverse());
  }
  CHECK_THROWS_AS((TriMat2{mono(1, 0, 0) + mono(1, 1, 0), LaurentPoly(),
                           LaurentPoly::one()})
                      .inverse(),
                  Error);
}

TEST_CASE("derived subgroup membership agrees with the diagonal") {
  MembershipReport in = derived_membership(FreeWord::parse("ABab"));
  CHECK(in.in_derived());
  CHECK(in.diagonal_trivial);
  CHECK(in.consistent());

  MembershipReport out = derived_membership(FreeWord::parse("ab"));
  CHECK_FALSE(out.in_derived());
  CHECK(out.a_sum == 1);
  CHECK(out.b_sum == 1);
  CHECK_FALSE(out.diagonal_trivial);
  CHECK(out.consistent());

  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    FreeWord w = FreeWord::parse(random_word(rng, t % 14));
    CHECK(derived_membership(w).consistent());
  }
}

TEST_CASE("conjugated commutators match the closed form and a word oracle") {
  for (long long i = -3; i <= 3; ++i)
    for (long long j = -3; j <= 3; ++j) {
      TriMat2 m = magnus_dij(i, j);
      CHECK(m.a11.is_one());
      CHECK(m.a22.is_one());
      CHECK(m.a12 == dij_closed_form(i, j));

      // Oracle: build the literal word (a^i b^j)^{-1} [a,b] (a^i b^j).
      std::string conj;
      for (long long k = 0; k < (i < 0 ? -i : i); ++k) conj += (i < 0 ? 'A' : 'a');
      for (long long k = 0; k < (j < 0 ? -j : j); ++k) conj += (j < 0 ? 'B' : 'b');
      FreeWord t = FreeWord::parse(conj);
      FreeWord w = t.inverse().concat(FreeWord::parse("ABab")).concat(t);
      CHECK(magnus_eval(w) == m);
    }
}

TEST_CASE("off-diagonal entries add along products in the derived subgroup") {
  TriMat2 u = magnus_dij(1, 0);
  TriMat2 v = magnus_dij(0, 2);
  TriMat2 prod = u.multiply(v);
  CHECK(prod.a12 == u.a12 + v.a12);
  CHECK(prod.a11.is_one());
}

TEST_CASE("the 25 window-2 commutator entries are Z-independent") {
  std::vector<LaurentPoly> polys;
  for (long long i = -2; i <= 2; ++i)
    for (long long j = -2; j <= 2; ++j) polys.push_back(dij_closed_form(i, j));
  IndependenceResult r = z_linear_independence(polys);
  CHECK(r.independent);
  CHECK(r.rank == 25);
  CHECK(r.pivots.size() == 25);
  CHECK(r.dependency.empty());
}

TEST_CASE("dependent families produce a verified integer relation") {
  LaurentPoly p = dij_closed_form(0, 0);
  LaurentPoly two_p = p + p;
  IndependenceResult r = z_linear_independence({p, two_p});
  REQUIRE_FALSE(r.independent);
  REQUIRE(r.dependency.size() == 2);
  CHECK(r.dependency[0] == 2);
  CHECK(r.dependency[1] == -1);

  LaurentPoly q = dij_closed_form(1, 1);
  IndependenceResult r2 = z_linear_independence({p, q, p + q});
  REQUIRE_FALSE(r2.independent);
  REQUIRE(r2.dependency.size() == 3);
  // Re-verify the relation independently.
  LaurentPoly combo;
  std::vector<LaurentPoly> in{p, q, p + q};
  for (int k = 0; k < 3; ++k)
    combo = combo + LaurentPoly::constant(r2.dependency[k]) * in[k];
  CHECK(combo.is_zero());
  CHECK(r2.dependency[0] > 0);  // normalized sign
}

TEST_CASE("independence handles edge inputs") {
  CHECK(z_linear_independence({}).independent);
  CHECK(z_linear_independence({LaurentPoly::one()}).independent);
  IndependenceResult z = z_linear_independence({LaurentPoly()});
  CHECK_FALSE(z.independent);
}

TEST_CASE("laurent arithmetic basics used throughout") {
  LaurentPoly x = mono(1, 1, 0);
  LaurentPoly y = mono(1, 0, 1);
  CHECK((x * y) == mono(1, 1, 1));
  CHECK((x - x).is_zero());
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(mono(1, -2, 3).unit_inverse() == mono(1, 2, -3));
  CHECK(mono(-1, 1, 0).unit_inverse() == mono(-1, -1, 0));
  CHECK_FALSE((x + y).is_unit_monomial());
  CHECK_THROWS_AS((x + y).unit_inverse(), Error);
  CHECK(x.str() == "x");
  CHECK((mono(-1, -1, -1) + mono(1, 0, -1)).str() == "-x^-1*y^-1 + y^-1");
}
