#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "kk/errors.hpp"
#include "kk/group.hpp"
#include "kk/subgroups.hpp"
#include "kk/wreath.hpp"
#include "test_util.hpp"

using namespace kk;
using kktest::load;

TEST_CASE("shift is conjugation by the top element") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  std::vector<int> f = {1, 0, 0};  // supported at position 0
  // g(x) = f(x b^{-1}) with b = 1 moves the support to position 1.
  CHECK(w.shift(1, f) == std::vector<int>{0, 1, 0});
  CHECK(w.shift(2, f) == std::vector<int>{0, 0, 1});
  CHECK(w.shift(0, f) == f);
  // Shifting by b then by c equals shifting by bc.
  std::vector<int> g = {1, 1, 0};
  CHECK(w.shift(2, w.shift(1, g)) == w.shift(w.top()->mul(1, 2), g));
}

TEST_CASE("pair multiplication applies the shift to the left base") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  WreathElement u{1, {0, 0}};
  WreathElement v{0, {1, 0}};
  // (b1, f1)(b2, f2) = (b1 b2, shift(b2, f1) * f2). With b2 = 1 the left
  // base is shifted; with b2 trivial it is not.
  WreathElement uv = w.multiply(u, v);
  CHECK(uv.top == 1);
  CHECK(uv.base == std::vector<int>{1, 0});
  WreathElement vu = w.multiply(v, u);
  CHECK(vu.top == 1);
  CHECK(vu.base == std::vector<int>{0, 1});
  CHECK_FALSE(uv == vu);
}

TEST_CASE("inverse and identity laws hold on every element") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  REQUIRE(w.element_count().value() == 24);
  for (unsigned long long i = 0; i < 24; ++i) {
    WreathElement u = w.decode(i);
    CHECK(w.multiply(u, w.inverse(u)) == w.identity());
    CHECK(w.multiply(w.inverse(u), u) == w.identity());
    CHECK(w.multiply(u, w.identity()) == u);
    CHECK(w.multiply(w.identity(), u) == u);
  }
}

TEST_CASE("associativity on all triples of Z/2 Wr Z/2") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  std::vector<WreathElement> all;
  for (unsigned long long i = 0; i < 8; ++i) all.push_back(w.decode(i));
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        CHECK(w.multiply(w.multiply(a, b), c) == w.multiply(a, w.multiply(b, c)));
}

TEST_CASE("encode and decode are mutually inverse and lexicographic") {
  WreathProduct w(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
  REQUIRE(w.element_count().value() == 18);
  WreathElement prev = w.decode(0);
  CHECK(w.decode(0) == w.identity());
  for (unsigned long long i = 0; i < 18; ++i) {
    WreathElement u = w.decode(i);
    CHECK(w.encode(u) == i);
    if (i > 0) CHECK(prev < u);
    prev = u;
  }
}

TEST_CASE("element_count reports overflow as nullopt") {
  WreathProduct big(FiniteGroup::cyclic(30), FiniteGroup::cyclic(30));
  CHECK_FALSE(big.element_count().has_value());
  WreathProduct small(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(small.element_count().value() == 8);
}

TEST_CASE("base and top embeddings are injective homomorphic sections") {
  WreathProduct w(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
  for (int b = 0; b < 2; ++b) CHECK(w.top_embed(b).top == b);
  CHECK(w.multiply(w.top_embed(1), w.top_embed(1)) == w.identity());
  WreathElement x = w.base_embed(1, 0);
  CHECK(x.top == 0);
  CHECK(x.base == std::vector<int>{1, 0});
  // Base values at one position multiply like the bottom group.
  CHECK(w.multiply(w.base_embed(1, 1), w.base_embed(2, 1)) == w.base_embed(0, 1));
}

TEST_CASE("Z/2 Wr Z/2 materializes to the dihedral group of order 8") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  GroupPtr m = w.materialize();
  REQUIRE(m->order() == 8);
  CHECK_FALSE(m->is_abelian());
  CHECK(kktest::isomorphic(m, load("d4.txt")));
  // The table is the wreath multiplication under encode().
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(static_cast<unsigned long long>(m->mul(i, j)) ==
            w.encode(w.multiply(w.decode(i), w.decode(j))));
}

TEST_CASE("materialized Z/2 Wr Z/3 matches the stored fixture") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  GroupPtr m = w.materialize();
  GroupPtr fix = load("z2wrz3.txt");
  REQUIRE(m->order() == fix->order());
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) CHECK(m->mul(i, j) == fix->mul(i, j));
}

TEST_CASE("materialization respects the size cap") {
  WreathProduct w(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4));
  REQUIRE(w.element_count().value() == 1024);  // table needs 2^20 cells
  CHECK_THROWS_AS(w.materialize(), SizeCap);
  CHECK(w.materialize(1 << 21)->order() == 1024);
}

TEST_CASE("coordinate, base and top subgroups of a materialized product") {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  GroupPtr m = w.materialize();
  Subgroup base = w.base_subgroup(m);
  CHECK(base.order() == 8);
  CHECK(is_normal(base));
  Subgroup top = w.top_subgroup(m);
  CHECK(top.order() == 3);
  CHECK_FALSE(is_normal(top));
  for (int pos = 0; pos < 3; ++pos) {
    Subgroup c = w.coordinate_subgroup(m, pos);
    CHECK(c.order() == 2);
    for (int e : c.elements) {
      WreathElement u = w.decode(e);
      CHECK(u.top == 0);
      for (int x = 0; x < 3; ++x)
        if (x != pos) CHECK(u.base[x] == 0);
    }
  }
  // The three coordinate subgroups are the conjugates of the first one.
  Subgroup c0 = w.coordinate_subgroup(m, 0);
  auto conj = conjugate_subgroups(c0);
  std::set<std::vector<int>> got, want;
  for (const auto& s : conj) got.insert(s.elements);
  for (int pos = 0; pos < 3; ++pos)
    want.insert(w.coordinate_subgroup(m, pos).elements);
  CHECK(got == want);
}

TEST_CASE("lifting a surjection gives a surjection with pointwise kernel") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  GroupPtr z2 = FiniteGroup::cyclic(2);
  GroupMap h{z4, z2, {0, 1, 0, 1}};
  REQUIRE(h.verify_hom());
  WreathProduct src(z4, z2), dst(z2, z2);
  GroupPtr sg = src.materialize(), dg = dst.materialize();
  GroupMap lift = lift_hom(h, src, dst, sg, dg);
  CHECK(lift.verified_hom);
  std::set<int> image(lift.image.begin(), lift.image.end());
  CHECK(image.size() == 8);  // surjective onto the order-8 target
  int kernel = 0;
  for (int x = 0; x < sg->order(); ++x)
    if (lift.image[x] == 0) ++kernel;
  CHECK(kernel == 4);  // |ker h|^|B| = 2^2

  // lift_apply agrees with the materialized map element by element.
  for (int x = 0; x < sg->order(); ++x) {
    WreathElement u = src.decode(static_cast<unsigned long long>(x));
    CHECK(dst.encode(lift_apply(h, u)) ==
          static_cast<unsigned long long>(lift.image[x]));
  }
}

TEST_CASE("lifting an injection stays injective") {
  GroupPtr z2 = FiniteGroup::cyclic(2);
  GroupPtr z4 = FiniteGroup::cyclic(4);
  GroupMap h{z2, z4, {0, 2}};
  REQUIRE(h.verify_hom());
  WreathProduct src(z2, z2), dst(z4, z2);
  GroupMap lift = lift_hom(h, src, dst, src.materialize(), dst.materialize());
  CHECK(lift.verified_hom);
  CHECK(lift.verify_injective());
}

TEST_CASE("index-2 blow-up inside Z/4 is an order-32 isomorphism") {
  GroupPtr d = FiniteGroup::cyclic(2);
  GroupPtr b0 = FiniteGroup::cyclic(4);
  Subgroup b = subgroup_generated(b0, {2});
  BlowupResult r = index_blowup_iso(d, b0, b, {0, 1});
  REQUIRE(r.domain->order() == 32);
  REQUIRE(r.target->order() == 32);
  CHECK(r.iso.verified_hom);
  CHECK(r.iso.verified_injective);
  CHECK(r.iso.is_bijective());
  CHECK(kktest::isomorphic(r.domain, r.target));
}

TEST_CASE("index-1 blow-up returns the identity map") {
  GroupPtr d = FiniteGroup::cyclic(2);
  GroupPtr b0 = FiniteGroup::cyclic(3);
  Subgroup b = full_subgroup(b0);
  BlowupResult r = index_blowup_iso(d, b0, b, {0});
  REQUIRE(r.domain->order() == 24);
  REQUIRE(r.target->order() == 24);
  for (int i = 0; i < 24; ++i) CHECK(r.iso.image[i] == i);
}

TEST_CASE("blow-up rejects a bad transversal") {
  GroupPtr d = FiniteGroup::cyclic(2);
  GroupPtr b0 = FiniteGroup::cyclic(4);
  Subgroup b = subgroup_generated(b0, {2});
  CHECK_THROWS_AS(index_blowup_iso(d, b0, b, {0, 2}), NotTransversal);
  CHECK_THROWS_AS(index_blowup_iso(d, b0, b, {0}), NotTransversal);
}
