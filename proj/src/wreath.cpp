#include "kk/wreath.hpp"

#include <algorithm>
#include <string>

namespace kk {

namespace {

std::optional<unsigned long long> checked_mul(unsigned long long a,
                                              unsigned long long b) {
  if (a != 0 && b > ~0ull / a) return std::nullopt;
  return a * b;
}

std::optional<unsigned long long> checked_pow(unsigned long long base,
                                              unsigned long long exp) {
  unsigned long long acc = 1;
  for (unsigned long long i = 0; i < exp; ++i) {
    auto next = checked_mul(acc, base);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

}  // namespace

WreathProduct::WreathProduct(GroupPtr bottom, GroupPtr top)
    : bottom_(std::move(bottom)), top_(std::move(top)) {}

WreathElement WreathProduct::identity() const {
  return WreathElement{0, std::vector<int>(top_->order(), 0)};
}

WreathElement WreathProduct::base_embed(int value, int position) const {
  WreathElement u = identity();
  u.base.at(position) = value;
  return u;
}

WreathElement WreathProduct::top_embed(int b) const {
  WreathElement u = identity();
  u.top = b;
  return u;
}

std::vector<int> WreathProduct::shift(int b, const std::vector<int>& f) const {
  const int nb = top_->order();
  std::vector<int> g(nb);
  const int binv = top_->inv(b);
  for (int x = 0; x < nb; ++x) g[x] = f[top_->mul(x, binv)];
  return g;
}

WreathElement WreathProduct::multiply(const WreathElement& u,
                                      const WreathElement& v) const {
  const int nb = top_->order();
  if (u.base.size() != static_cast<std::size_t>(nb) ||
      v.base.size() != static_cast<std::size_t>(nb)) {
    throw MixedParents("wreath elements from different products");
  }
  // (b1 f1)(b2 f2) = (b1 b2)(b2^{-1} f1 b2) f2
  WreathElement w;
  w.top = top_->mul(u.top, v.top);
  w.base = shift(v.top, u.base);
  for (int x = 0; x < nb; ++x) w.base[x] = bottom_->mul(w.base[x], v.base[x]);
  return w;
}

WreathElement WreathProduct::inverse(const WreathElement& u) const {
  const int nb = top_->order();
  WreathElement w;
  w.top = top_->inv(u.top);
  w.base.resize(nb);
  for (int x = 0; x < nb; ++x) w.base[x] = bottom_->inv(u.base[top_->mul(x, u.top)]);
  return w;
}

std::optional<unsigned long long> WreathProduct::element_count() const {
  auto fcount = checked_pow(bottom_->order(), top_->order());
  if (!fcount) return std::nullopt;
  return checked_mul(*fcount, top_->order());
}

unsigned long long WreathProduct::encode(const WreathElement& u) const {
  const unsigned long long na = bottom_->order();
  unsigned long long idx = u.top;
  for (int x = 0; x < top_->order(); ++x) idx = idx * na + u.base[x];
  return idx;
}

WreathElement WreathProduct::decode(unsigned long long index) const {
  const unsigned long long na = bottom_->order();
  WreathElement u;
  u.base.resize(top_->order());
  for (int x = top_->order() - 1; x >= 0; --x) {
    u.base[x] = static_cast<int>(index % na);
    index /= na;
  }
  u.top = static_cast<int>(index);
  return u;
}

GroupPtr WreathProduct::materialize(std::size_t max_cells) const {
  const auto count = element_count();
  if (!count || !checked_mul(*count, *count) ||
      *checked_mul(*count, *count) > max_cells) {
    throw SizeCap("wreath product exceeds the table cap");
  }
  const int n = static_cast<int>(*count);
  std::vector<WreathElement> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = decode(i);

  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      flat[static_cast<std::size_t>(i) * n + j] =
          static_cast<int>(encode(multiply(elems[i], elems[j])));
    }
  }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::string s = "(" + top_->label(elems[i].top) + ";";
    for (int x = 0; x < top_->order(); ++x) {
      if (x) s += ",";
      s += bottom_->label(elems[i].base[x]);
    }
    labels[i] = s + ")";
  }
  return FiniteGroup::trusted(std::move(flat), n, std::move(labels));
}

Subgroup WreathProduct::coordinate_subgroup(const GroupPtr& materialized,
                                            int position) const {
  std::vector<int> elems;
  for (int a = 0; a < bottom_->order(); ++a) {
    elems.push_back(static_cast<int>(encode(base_embed(a, position))));
  }
  std::sort(elems.begin(), elems.end());
  return subgroup_from_elements(materialized, std::move(elems));
}

Subgroup WreathProduct::base_subgroup(const GroupPtr& materialized) const {
  // Base functions occupy exactly the encodings below |A|^|B|.
  const int fcount = materialized->order() / top_->order();
  std::vector<int> elems(fcount);
  for (int i = 0; i < fcount; ++i) elems[i] = i;
  return subgroup_from_elements(materialized, std::move(elems));
}

Subgroup WreathProduct::top_subgroup(const GroupPtr& materialized) const {
  std::vector<int> elems;
  for (int b = 0; b < top_->order(); ++b) {
    elems.push_back(static_cast<int>(encode(top_embed(b))));
  }
  std::sort(elems.begin(), elems.end());
  return subgroup_from_elements(materialized, std::move(elems));
}

WreathElement lift_apply(const GroupMap& h, const WreathElement& u) {
  WreathElement w;
  w.top = u.top;
  w.base.resize(u.base.size());
  for (std::size_t x = 0; x < u.base.size(); ++x) w.base[x] = h(u.base[x]);
  return w;
}

GroupMap lift_hom(const GroupMap& h, const WreathProduct& source,
                  const WreathProduct& target, const GroupPtr& source_grp,
                  const GroupPtr& target_grp) {
  if (h.domain != source.bottom() || h.codomain != target.bottom() ||
      source.top() != target.top()) {
    throw MixedParents("lifted map does not match the wreath products");
  }
  if (!h.verified_hom) throw Error("lifted map must be a verified homomorphism");
  GroupMap out;
  out.domain = source_grp;
  out.codomain = target_grp;
  out.image.resize(source_grp->order());
  for (int i = 0; i < source_grp->order(); ++i) {
    out.image[i] =
        static_cast<int>(target.encode(lift_apply(h, source.decode(i))));
  }
  if (!out.verify_hom()) throw Error("lifted map failed the homomorphism check");
  out.verify_injective();
  return out;
}

BlowupResult index_blowup_iso(const GroupPtr& d, const GroupPtr& b0,
                              const Subgroup& b, const std::vector<int>& t,
                              std::size_t max_cells) {
  if (b.parent != b0) throw MixedParents("subgroup does not live in the top group");
  if (!b0->is_abelian()) throw Error("blow-up requires an abelian top group");
  const int m = static_cast<int>(t.size());
  if (m <= 0 || b.order() * m != b0->order()) {
    throw NotTransversal("transversal size does not match the index");
  }
  // The translates t_i B must tile B0.
  std::vector<char> covered(b0->order(), 0);
  for (int ti : t) {
    for (int x : b.elements) {
      const int y = b0->mul(ti, x);
      if (covered[y]) throw NotTransversal("translates of B overlap");
      covered[y] = 1;
    }
  }

  // Domain: the subgroup of D Wr B0 with top in B.
  const WreathProduct w0(d, b0);
  const GroupPtr w0_grp = w0.materialize(max_cells);
  std::vector<int> dom_elems;
  const int fcount = w0_grp->order() / b0->order();
  for (int top : b.elements) {
    for (int f = 0; f < fcount; ++f) {
      dom_elems.push_back(static_cast<int>(static_cast<unsigned long long>(top) * fcount + f));
    }
  }
  std::sort(dom_elems.begin(), dom_elems.end());
  const InducedGroup domain = subgroup_as_group(Subgroup{w0_grp, dom_elems, {}});

  // Target: (D^m) Wr B.
  const GroupPtr dm = FiniteGroup::direct_power(d, m);
  const InducedGroup b_grp = subgroup_as_group(b);
  const WreathProduct wt(dm, b_grp.group);
  const GroupPtr target = wt.materialize(max_cells);

  GroupMap iso;
  iso.domain = domain.group;
  iso.codomain = target;
  iso.image.resize(domain.group->order());
  const int dorder = d->order();
  for (int i = 0; i < domain.group->order(); ++i) {
    const WreathElement u = w0.decode(domain.to_parent[i]);
    WreathElement v;
    v.top = b_grp.from_parent[u.top];
    v.base.resize(b_grp.group->order());
    for (int xi = 0; xi < b_grp.group->order(); ++xi) {
      const int x = b_grp.to_parent[xi];
      int tuple = 0;
      for (int k = 0; k < m; ++k) tuple = tuple * dorder + u.base[b0->mul(t[k], x)];
      v.base[xi] = tuple;
    }
    iso.image[i] = static_cast<int>(wt.encode(v));
  }
  if (!iso.verify_hom()) throw Error("blow-up map failed the homomorphism check");
  if (!iso.verify_injective() || !iso.is_bijective()) {
    throw Error("blow-up map is not bijective");
  }
  return BlowupResult{domain.group, target, std::move(iso)};
}

}  // namespace kk
