#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "kk/errors.hpp"
#include "kk/group.hpp"
#include "kk/kk_embedding.hpp"
#include "kk/subgroups.hpp"
#include "kk/wreath.hpp"
#include "test_util.hpp"

using namespace kk;
using kktest::load;

namespace {

KKContext context(const GroupPtr& g, const std::vector<int>& agens,
                  const std::vector<int>& cgens = {}) {
  Subgroup a = subgroup_generated(g, agens);
  Subgroup c = cgens.empty() ? trivial_subgroup(g) : subgroup_generated(g, cgens);
  return make_kk_context(g, a, c);
}

}  // namespace

TEST_CASE("context for Z/4 over its order-2 subgroup") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  KKContext ctx = context(z4, {2});
  CHECK(ctx.b_order() == 2);
  CHECK(ctx.sect.section == std::vector<int>{0, 1});
  CHECK(ctx.a_grp.group->order() == 2);
  CHECK(ctx.abar.group->order() == 2);
}

TEST_CASE("full embedding of Z/4 reproduces the hand computation") {
  GroupPtr z4 = FiniteGroup::cyclic(4);
  KKContext ctx = context(z4, {2});
  Embedding emb = kk_full(ctx);
  REQUIRE(emb.hom_verified);
  REQUIRE(emb.injective);
  CHECK(emb.kernel_trivial);

  // Image of the generator 1: top = pi(1), base f with
  // f(x) = (x pi(1)^{-1})^s * 1 * (x^s)^{-1} evaluated at x = 0, 1:
  //   f(0) = s(1) + 1 - s(0) = 2,  f(1) = s(0) + 1 - s(1) = 0
  // which in the coordinates of A = {0, 2} reads (1, 0).
  const WreathElement& img = emb.images[1];
  CHECK(img.top == ctx.quo.projection(1));
  REQUIRE(img.base.size() == 2);
  CHECK(ctx.a_grp.to_parent[img.base[0]] == 2);
  CHECK(ctx.a_grp.to_parent[img.base[1]] == 0);

  // Elements of A map into the base with top = identity.
  for (int a : ctx.a.elements) CHECK(emb.images[a].top == 0);

  REQUIRE(emb.target != nullptr);  // Z/2 Wr Z/2 has order 8
  CHECK(emb.target->order() == 8);
  CHECK(emb.map.verified_hom);
  CHECK(emb.map.verified_injective);
}

TEST_CASE("full embedding formula satisfied pointwise on S3") {
  GroupPtr s3 = load("s3.txt");
  KKContext ctx = context(s3, {1});
  Embedding emb = kk_full(ctx);
  REQUIRE(emb.verified());
  REQUIRE(emb.target != nullptr);
  CHECK(emb.target->order() == 18);  // |A3|^2 * 2

  // Independent recomputation of every base value from the definition.
  for (int g = 0; g < 6; ++g) {
    const WreathElement& img = emb.images[g];
    CHECK(img.top == ctx.quo.projection(g));
    for (int x = 0; x < ctx.b_order(); ++x) {
      int xs = ctx.sect.section[x];
      int xpg = ctx.quo.group->mul(x, ctx.quo.group->inv(ctx.quo.projection(g)));
      int lhs = s3->mul(s3->mul(ctx.sect.section[xpg], g), s3->inv(xs));
      CHECK(ctx.a_grp.to_parent[img.base[x]] == lhs);
    }
  }
}

TEST_CASE("full embedding verified across the standard fixture groups") {
  // D4 over its rotation subgroup, Q8 over <i>, A4 over V4.
  GroupPtr d4 = load("d4.txt");
  int r4 = kktest::element_of_order(d4, 4);
  KKContext dctx = context(d4, {r4});
  Embedding demb = kk_full(dctx);
  CHECK(demb.verified());

  GroupPtr q8 = load("q8.txt");
  KKContext qctx = context(q8, {2});
  REQUIRE(qctx.a.order() == 4);
  Embedding qemb = kk_full(qctx);
  CHECK(qemb.verified());

  GroupPtr a4 = load("a4.txt");
  KKContext actx = context(a4, {1, 2});
  REQUIRE(actx.a.order() == 4);
  Embedding aemb = kk_full(actx);
  CHECK(aemb.verified());
  REQUIRE(aemb.target != nullptr);
  CHECK(aemb.target->order() == 192);  // 4^3 * 3
}

TEST_CASE("context rejects non-normal A and mixed subgroups") {
  GroupPtr s3 = load("s3.txt");
  Subgroup refl = subgroup_generated(s3, {3});
  CHECK_THROWS_AS(make_kk_context(s3, refl, trivial_subgroup(s3)), NotNormal);

  GroupPtr a4 = load("a4.txt");
  Subgroup v4 = subgroup_generated(a4, {1, 2});
  Subgroup c2 = subgroup_generated(a4, {1});
  // C must be a subgroup of A over the same parent.
  CHECK_THROWS_AS(make_kk_context(s3, subgroup_generated(s3, {1}), c2),
                  MixedParents);
  CHECK_NOTHROW(make_kk_context(a4, v4, c2));
}

TEST_CASE("context rejects C with nontrivial normal core") {
  GroupPtr d4 = load("d4.txt");
  int r4 = kktest::element_of_order(d4, 4);
  Subgroup rot = subgroup_generated(d4, {r4});
  Subgroup center = subgroup_generated(d4, {d4->mul(r4, r4)});
  try {
    make_kk_context(d4, rot, center);
    FAIL("expected CoreNotTrivial");
  } catch (const CoreNotTrivial& e) {
    CHECK(e.core == center.elements);
  }
}

TEST_CASE("custom sections are validated and alter only the base values") {
  GroupPtr s3 = load("s3.txt");
  Subgroup a3 = subgroup_generated(s3, {1});
  Subgroup triv = trivial_subgroup(s3);
  CHECK_THROWS_AS(
      make_kk_context(s3, a3, triv, std::vector<int>{0, 1}),  // pi(1) = 0 != 1
      NotTransversal);
  CHECK_THROWS_AS(
      make_kk_context(s3, a3, triv, std::vector<int>{3, 4}),  // s(1) != 1
      NotTransversal);
  KKContext alt = make_kk_context(s3, a3, triv, std::vector<int>{0, 4});
  CHECK(alt.sect.section == std::vector<int>{0, 4});
  Embedding emb = kk_full(alt);
  CHECK(emb.verified());
}

TEST_CASE("embeddings from different sections are conjugate in the wreath product") {
  GroupPtr s3 = load("s3.txt");
  Subgroup a3 = subgroup_generated(s3, {1});
  Subgroup triv = trivial_subgroup(s3);
  KKContext c1 = make_kk_context(s3, a3, triv);
  KKContext c2 = make_kk_context(s3, a3, triv, std::vector<int>{0, 4});
  Embedding e1 = kk_full(c1);
  Embedding e2 = kk_full(c2);
  REQUIRE(e1.verified());
  REQUIRE(e2.verified());

  const WreathProduct& w = e1.wreath;
  bool found = false;
  for (unsigned long long t = 0; t < w.element_count().value() && !found; ++t) {
    WreathElement u = w.decode(t);
    WreathElement ui = w.inverse(u);
    bool all = true;
    for (int g = 0; g < 6 && all; ++g)
      all = w.multiply(w.multiply(ui, e1.images[g]), u) == e2.images[g];
    found = all;
  }
  CHECK(found);
}

TEST_CASE("reduced embedding is the lift of the full one") {
  GroupPtr g = load("z2wrz3.txt");
  Subgroup base = subgroup_generated(g, {4, g->conj(8, 4), g->conj(16, 4)});
  REQUIRE(base.order() == 8);
  Subgroup c0 = subgroup_generated(g, {4});
  // Two contexts over the same A share the quotient, section and the
  // standalone copy of A; only the modding subgroup differs.
  KKContext cfull = make_kk_context(g, base, trivial_subgroup(g));
  KKContext cred = make_kk_context(g, base, c0);
  REQUIRE(cfull.sect.section == cred.sect.section);
  Embedding full = kk_full(cfull);
  Embedding red = kk_reduced(cred);
  REQUIRE(full.hom_verified);
  REQUIRE(red.verified());
  for (int x = 0; x < g->order(); ++x) {
    WreathElement lifted = lift_apply(cred.abar.projection, full.images[x]);
    CHECK(lifted == red.images[x]);
  }
  CHECK(red.target != nullptr);
  CHECK(red.target->order() == 192);  // (8/2)^3 * 3
}

TEST_CASE("proposition 1 quantities for S3 over A3") {
  GroupPtr s3 = load("s3.txt");
  KKContext ctx = context(s3, {1});
  Embedding emb = kk_reduced(ctx);
  Prop1Report rep = verify_prop1(ctx, emb);
  CHECK(rep.a_maps_into_base);
  CHECK(rep.wreath_size == 18);
  CHECK(rep.product_size == 18);
  CHECK(rep.product_covers);
  CHECK(rep.injective);
  CHECK(rep.ok());
}

TEST_CASE("proposition 1 quantities for A4 over V4 mod an order-2 C") {
  GroupPtr a4 = load("a4.txt");
  KKContext ctx = context(a4, {1, 2}, {1});
  Embedding emb = kk_reduced(ctx);
  Prop1Report rep = verify_prop1(ctx, emb);
  CHECK(rep.wreath_size == 24);  // |V4/C| = 2, |B| = 3: 2^3 * 3
  CHECK(rep.product_size == 24);
  CHECK(rep.ok());
}

TEST_CASE("planting C = A in S3 is rejected for its normal core") {
  GroupPtr s3 = load("s3.txt");
  Subgroup a3 = subgroup_generated(s3, {1});
  CHECK_THROWS_AS(make_kk_context(s3, a3, a3), CoreNotTrivial);
}

TEST_CASE("splitting hypotheses hold for a coordinate subgroup of Z/2 Wr Z/3") {
  GroupPtr g = load("z2wrz3.txt");
  Subgroup h = subgroup_generated(g, {4});
  SplitCheckReport chk = theorem1_check(g, h);
  CHECK(chk.ok());
  CHECK(chk.n == 3);
  CHECK(chk.a.order() == 8);
  CHECK(chk.failing() == "all hypotheses hold");

  SplitResult split = theorem1_split(g, h);
  CHECK(split.iso.verified_hom);
  CHECK(split.iso.verified_injective);
  CHECK(split.iso.is_bijective());
  CHECK(split.target->order() == 24);
  CHECK(split.image_of_a_is_base);
}

TEST_CASE("splitting round-trips Z/3 Wr Z/2 as well") {
  WreathProduct w(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
  GroupPtr g = w.materialize();
  Subgroup h = w.coordinate_subgroup(g, 0);
  SplitCheckReport chk = theorem1_check(g, h);
  REQUIRE(chk.ok());
  CHECK(chk.n == 2);
  SplitResult split = theorem1_split(g, h);
  CHECK(split.iso.is_bijective());
  CHECK(split.target->order() == 18);
  CHECK(kktest::isomorphic(split.target, g));
}

TEST_CASE("splitting rejects Q8 over <i> with the normalizer hypothesis") {
  GroupPtr q8 = load("q8.txt");
  Subgroup i = subgroup_generated(q8, {2});
  REQUIRE(i.order() == 4);
  SplitCheckReport chk = theorem1_check(q8, i);
  CHECK_FALSE(chk.ok());
  CHECK_FALSE(chk.normalizer_equals_a);
  try {
    theorem1_split(q8, i);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.hypothesis.find("normalizer") != std::string::npos);
  }
}

TEST_CASE("splitting rejects S3 over a transposition subgroup") {
  GroupPtr s3 = load("s3.txt");
  Subgroup h = subgroup_generated(s3, {3});
  SplitCheckReport chk = theorem1_check(s3, h);
  CHECK_FALSE(chk.ok());
  try {
    theorem1_split(s3, h);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.hypothesis.find("direct") != std::string::npos);
  }
}

TEST_CASE("trivial H splits G as 1 Wr G") {
  GroupPtr s3 = load("s3.txt");
  SplitResult split = theorem1_split(s3, trivial_subgroup(s3));
  CHECK(split.target->order() == 6);
  CHECK(split.iso.is_bijective());
  CHECK(kktest::isomorphic(split.target, s3));
}
