#include "kk/kk_embedding.hpp"

#include <algorithm>
#include <set>

#include "kk/errors.hpp"

namespace kk {

namespace {

// f_g(x) = (x pi(g)^{-1})^s * g * (x^s)^{-1}, an element of A for every
// x in B. Returns the index inside a_grp.
int base_value(const KKContext& ctx, int g, int x) {
  const FiniteGroup& big = *ctx.g;
  const FiniteGroup& b = *ctx.quo.group;
  int pig = ctx.quo.projection.image[g];
  int left = ctx.sect.section[b.mul(x, b.inv(pig))];
  int xs = ctx.sect.section[x];
  int val = big.mul(big.mul(left, g), big.inv(xs));
  int idx = ctx.a_grp.from_parent[val];
  if (idx < 0) throw Error("embedding base value escaped the normal subgroup");
  return idx;
}

void verify_embedding(const FiniteGroup& g, Embedding& emb) {
  const int n = g.order();
  emb.hom_verified = true;
  for (int x = 0; x < n && emb.hom_verified; ++x)
    for (int y = 0; y < n; ++y) {
      WreathElement lhs = emb.images[g.mul(x, y)];
      WreathElement rhs = emb.wreath.multiply(emb.images[x], emb.images[y]);
      if (!(lhs == rhs)) {
        emb.hom_verified = false;
        break;
      }
    }
  WreathElement id = emb.wreath.identity();
  emb.kernel_trivial = true;
  for (int x = 1; x < n; ++x)
    if (emb.images[x] == id) {
      emb.kernel_trivial = false;
      break;
    }
  std::set<WreathElement> seen(emb.images.begin(), emb.images.end());
  emb.injective = seen.size() == static_cast<std::size_t>(n);
}

void try_materialize(const FiniteGroup& g, Embedding& emb,
                     std::size_t max_cells) {
  auto count = emb.wreath.element_count();
  if (!count) return;
  unsigned long long cells;
  if (__builtin_mul_overflow(*count, *count, &cells) || cells > max_cells)
    return;
  emb.target = emb.wreath.materialize(max_cells);
  emb.map.domain = nullptr;
  GroupMap m;
  m.image.resize(g.order());
  for (int x = 0; x < g.order(); ++x)
    m.image[x] = static_cast<int>(emb.wreath.encode(emb.images[x]));
  emb.map = std::move(m);
  emb.map.verified_hom = emb.hom_verified;
  emb.map.verified_injective = emb.injective;
}

Embedding evaluate(const KKContext& ctx, bool reduced, std::size_t max_cells) {
  GroupPtr bottom = reduced ? ctx.abar.group : ctx.a_grp.group;
  Embedding emb{WreathProduct(bottom, ctx.quo.group), {}, false, false,
                false, nullptr, GroupMap{}};
  const int n = ctx.g->order();
  const int bn = ctx.b_order();
  emb.images.reserve(n);
  for (int g = 0; g < n; ++g) {
    WreathElement w;
    w.top = ctx.quo.projection.image[g];
    w.base.resize(bn);
    for (int x = 0; x < bn; ++x) {
      int a_idx = base_value(ctx, g, x);
      w.base[x] = reduced ? ctx.abar.projection.image[a_idx] : a_idx;
    }
    emb.images.push_back(std::move(w));
  }
  verify_embedding(*ctx.g, emb);
  try_materialize(*ctx.g, emb, max_cells);
  return emb;
}

}  // namespace

KKContext make_kk_context(const GroupPtr& g, Subgroup a, Subgroup c,
                          std::optional<std::vector<int>> section) {
  if (a.parent != g || c.parent != g)
    throw MixedParents("subgroups belong to a different group");
  if (!is_normal(a)) throw NotNormal("A is not normal in G");
  for (int x : c.elements)
    if (!a.contains(x)) throw Error("C is not contained in A");

  KKContext ctx;
  ctx.g = g;
  ctx.a = a;
  ctx.c = c;
  ctx.quo = quotient_with_projection(a);
  ctx.sect = transversal(ctx.quo);
  if (section) {
    if (static_cast<int>(section->size()) != ctx.quo.group->order())
      throw NotTransversal("transversal section has wrong length");
    if ((*section)[0] != 0)
      throw NotTransversal("transversal must send identity to identity");
    for (int b = 0; b < ctx.quo.group->order(); ++b)
      if (ctx.quo.projection.image[(*section)[b]] != b)
        throw NotTransversal("section does not split the projection");
    ctx.sect.section = *section;
  }
  ctx.a_grp = subgroup_as_group(a);

  // C inside the standalone copy of A; normality is checked there.
  std::vector<int> c_local;
  c_local.reserve(c.elements.size());
  for (int x : c.elements) c_local.push_back(ctx.a_grp.from_parent[x]);
  std::sort(c_local.begin(), c_local.end());
  ctx.c_in_a = subgroup_from_elements(ctx.a_grp.group, c_local);
  if (!is_normal(ctx.c_in_a)) throw NotNormal("C is not normal in A");

  Subgroup core = normal_core(c);
  if (!core.is_trivial())
    throw CoreNotTrivial("C has a nontrivial normal core of order " +
                             std::to_string(core.order()),
                         core.elements);

  ctx.abar = quotient_with_projection(ctx.c_in_a);
  return ctx;
}

Embedding kk_full(const KKContext& ctx, std::size_t max_cells) {
  if (!ctx.c.is_trivial())
    throw Error("full embedding requires trivial C; use the reduced form");
  return evaluate(ctx, false, max_cells);
}

Embedding kk_reduced(const KKContext& ctx, std::size_t max_cells) {
  return evaluate(ctx, true, max_cells);
}

Prop1Report verify_prop1(const KKContext& ctx, const Embedding& emb) {
  Prop1Report rep;
  rep.injective = emb.injective;

  rep.a_maps_into_base = true;
  for (int x : ctx.a.elements)
    if (emb.images[x].top != 0) {
      rep.a_maps_into_base = false;
      break;
    }

  auto count = emb.wreath.element_count();
  if (!count) throw SizeCap("wreath order overflows");
  rep.wreath_size = *count;
  const int bn = ctx.b_order();
  const int abar_n = emb.wreath.bottom()->order();
  unsigned long long fbar = 1;
  for (int i = 0; i < bn; ++i) {
    if (fbar > (1ull << 40) / abar_n) throw SizeCap("base group too large to enumerate");
    fbar *= abar_n;
  }
  unsigned long long work = fbar * ctx.g->order();
  if (work > 1'000'000ull) throw SizeCap("set product too large to enumerate");

  // Walk all of Fbar with a mixed-radix counter and collect kappa(G) Fbar.
  std::set<WreathElement> products;
  WreathElement f;
  f.top = 0;
  f.base.assign(bn, 0);
  for (unsigned long long i = 0; i < fbar; ++i) {
    for (int g = 0; g < ctx.g->order(); ++g)
      products.insert(emb.wreath.multiply(emb.images[g], f));
    int pos = bn - 1;
    while (pos >= 0 && f.base[pos] == abar_n - 1) f.base[pos--] = 0;
    if (pos >= 0) ++f.base[pos];
  }
  rep.product_size = products.size();
  rep.product_covers = rep.product_size == rep.wreath_size;
  return rep;
}

std::string SplitCheckReport::failing() const {
  std::string out;
  auto add = [&out](const std::string& s) {
    if (!out.empty()) out += "; ";
    out += s;
  };
  if (!a_normal) add("product of conjugates is not normal");
  if (!direct.ok) add("conjugates do not form a direct product: " + direct.witness);
  if (!normalizer_equals_a) add("normalizer of H differs from the conjugate product");
  if (!quotient_order_matches) add("conjugate count differs from quotient order");
  return out.empty() ? "all hypotheses hold" : out;
}

SplitCheckReport theorem1_check(const GroupPtr& g, const Subgroup& h) {
  if (h.parent != g) throw MixedParents("H belongs to a different group");
  SplitCheckReport rep;
  rep.conjugates = conjugate_subgroups(h);
  rep.n = static_cast<int>(rep.conjugates.size());

  std::vector<int> gens;
  for (const Subgroup& s : rep.conjugates)
    gens.insert(gens.end(), s.elements.begin(), s.elements.end());
  rep.a = subgroup_generated(g, gens);
  rep.a_normal = is_normal(rep.a);
  rep.direct = internal_direct_product_check(g, rep.conjugates);
  rep.normalizer_h = normalizer(h);
  rep.normalizer_equals_a = rep.normalizer_h.elements == rep.a.elements;
  rep.quotient_order_matches =
      rep.a.order() != 0 && g->order() % rep.a.order() == 0 &&
      g->order() / rep.a.order() == rep.n;
  return rep;
}

namespace {

SplitResult degenerate_split(const GroupPtr& g, const Subgroup& h,
                             std::size_t max_cells) {
  // H = 1 forces A = 1 and B = G; the wreath 1 Wr G is a relabeled G.
  SplitResult res;
  res.check = theorem1_check(g, h);
  KKContext ctx = make_kk_context(g, h, h);
  Embedding emb = kk_reduced(ctx, max_cells);
  if (!emb.target) throw SizeCap("degenerate wreath exceeds the table cap");
  res.target = emb.target;
  res.iso = emb.map;
  res.iso.domain = g;
  res.iso.codomain = emb.target;
  if (!res.iso.verify_hom() || !res.iso.verify_injective() ||
      !res.iso.is_bijective())
    throw Error("degenerate splitting failed verification");
  res.image_of_a_is_base = true;
  return res;
}

}  // namespace

SplitResult theorem1_split(const GroupPtr& g, const Subgroup& h,
                           std::size_t max_cells) {
  if (h.parent != g) throw MixedParents("H belongs to a different group");
  if (h.is_trivial()) return degenerate_split(g, h, max_cells);

  SplitResult res;
  res.check = theorem1_check(g, h);
  if (!res.check.ok())
    throw HypothesisFailed("splitting hypotheses fail: " + res.check.failing(),
                           res.check.failing());

  // C = product of the conjugates other than H itself.
  Subgroup c;
  if (res.check.n == 1) {
    c = trivial_subgroup(g);
  } else {
    std::vector<int> gens;
    for (std::size_t i = 1; i < res.check.conjugates.size(); ++i) {
      const auto& elems = res.check.conjugates[i].elements;
      gens.insert(gens.end(), elems.begin(), elems.end());
    }
    c = subgroup_generated(g, gens);
  }

  KKContext ctx = make_kk_context(g, res.check.a, c);
  Embedding emb = kk_reduced(ctx, max_cells);
  if (!emb.verified()) throw Error("reduced embedding failed verification");

  // Identify Abar with H through the unique factorization a = h c.
  const int abar_n = ctx.abar.group->order();
  if (abar_n != h.order())
    throw Error("quotient by the complement does not match H in size");
  std::vector<int> iota(abar_n, -1);
  for (int ab = 0; ab < abar_n; ++ab) {
    int rep_local = ctx.abar.reps[ab];
    int rep = ctx.a_grp.to_parent[rep_local];
    int found = -1;
    for (int hh : h.elements) {
      if (c.contains(g->mul(g->inv(hh), rep))) {
        if (found >= 0) throw Error("factorization over H is not unique");
        found = hh;
      }
    }
    if (found < 0) throw Error("coset representative misses the H-factor");
    iota[ab] = found;
  }

  InducedGroup h_grp = subgroup_as_group(h);
  WreathProduct wh(h_grp.group, ctx.quo.group);
  res.target = wh.materialize(max_cells);

  GroupMap iso;
  iso.domain = g;
  iso.codomain = res.target;
  iso.image.resize(g->order());
  for (int x = 0; x < g->order(); ++x) {
    WreathElement w;
    w.top = emb.images[x].top;
    w.base.resize(ctx.b_order());
    for (int k = 0; k < ctx.b_order(); ++k)
      w.base[k] = h_grp.from_parent[iota[emb.images[x].base[k]]];
    iso.image[x] = static_cast<int>(wh.encode(w));
  }
  if (!iso.verify_hom() || !iso.verify_injective() || !iso.is_bijective())
    throw Error("splitting isomorphism failed verification");
  res.iso = std::move(iso);

  // kappa(A) must be exactly the base subgroup.
  std::set<int> a_images;
  bool base_only = true;
  for (int x : res.check.a.elements) {
    if (emb.images[x].top != 0) base_only = false;
    a_images.insert(res.iso.image[x]);
  }
  unsigned long long fbar = 1;
  for (int i = 0; i < ctx.b_order(); ++i) fbar *= abar_n;
  res.image_of_a_is_base = base_only && a_images.size() == fbar;
  if (!res.image_of_a_is_base)
    throw Error("image of A is not the full base subgroup");
  return res;
}

}  // namespace kk
