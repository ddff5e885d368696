#include "kk/subgroups.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kk {

namespace {

// Closure of a seed set under multiplication, as a sorted element list.
std::vector<int> close_under_mult(const FiniteGroup& g, std::vector<int> seed) {
  std::set<int> have{0};
  std::vector<int> queue{0};
  for (int s : seed) {
    if (have.insert(s).second) queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t i = 0; i < queue.size(); ++i) {
      // Products in both orders; inverses follow from finiteness.
      const int a = g.mul(queue[head], queue[i]);
      if (have.insert(a).second) queue.push_back(a);
      const int b = g.mul(queue[i], queue[head]);
      if (have.insert(b).second) queue.push_back(b);
    }
  }
  return {have.begin(), have.end()};
}

std::vector<int> pick_generators(const FiniteGroup& g, const std::vector<int>& elements) {
  // Greedy: grow a generating set until it spans the subgroup.
  std::vector<int> gens;
  std::vector<int> span{0};
  for (int x : elements) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = close_under_mult(g, gens);
    if (span.size() == elements.size()) break;
  }
  return gens;
}

}  // namespace

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {0}, {}}; }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < g->order(); ++i) all[i] = i;
  return Subgroup{g, all, pick_generators(*g, all)};
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens) {
  for (int x : gens) {
    if (x < 0 || x >= g->order()) throw Error("generator index out of range");
  }
  return Subgroup{g, close_under_mult(*g, gens), gens};
}

Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto gens = pick_generators(*g, elements);
  return Subgroup{g, std::move(elements), std::move(gens)};
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  for (int x = 0; x < g.order(); ++x) {
    for (int a : h.elements) {
      if (!h.contains(g.conj(x, a))) return false;
    }
  }
  return true;
}

Subgroup normalizer(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<int> norm;
  for (int x = 0; x < g.order(); ++x) {
    bool keeps = true;
    for (int a : h.elements) {
      if (!h.contains(g.conj(x, a))) {
        keeps = false;
        break;
      }
    }
    if (keeps) norm.push_back(x);
  }
  return subgroup_from_elements(h.parent, std::move(norm));
}

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  std::vector<int> conj;
  conj.reserve(h.elements.size());
  for (int a : h.elements) conj.push_back(h.parent->conj(g, a));
  std::sort(conj.begin(), conj.end());
  std::vector<int> gens;
  gens.reserve(h.generators.size());
  for (int a : h.generators) gens.push_back(h.parent->conj(g, a));
  return Subgroup{h.parent, std::move(conj), std::move(gens)};
}

Subgroup normal_core(const Subgroup& c) {
  const auto& g = *c.parent;
  std::vector<int> core = c.elements;
  for (int x = 0; x < g.order() && core.size() > 1; ++x) {
    const auto conj = conjugate_subgroup(c, x);
    std::vector<int> next;
    std::set_intersection(core.begin(), core.end(), conj.elements.begin(),
                          conj.elements.end(), std::back_inserter(next));
    core.swap(next);
  }
  return subgroup_from_elements(c.parent, std::move(core));
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent) throw MixedParents("intersection across parents");
  std::vector<int> both;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                        b.elements.end(), std::back_inserter(both));
  return subgroup_from_elements(a.parent, std::move(both));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent) throw MixedParents("join across parents");
  std::vector<int> seed = a.elements;
  seed.insert(seed.end(), b.elements.begin(), b.elements.end());
  return subgroup_from_elements(a.parent, close_under_mult(*a.parent, seed));
}

std::vector<Subgroup> conjugate_subgroups(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<Subgroup> out;
  std::set<std::vector<int>> seen;
  for (int x = 0; x < g.order(); ++x) {
    auto conj = conjugate_subgroup(h, x);
    if (seen.insert(conj.elements).second) out.push_back(std::move(conj));
  }
  return out;
}

Quotient quotient_with_projection(const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("subgroup is not normal");
  const auto& g = *n.parent;
  const int order = g.order();

  // Each coset is keyed by its minimal element.
  std::vector<int> coset_min(order, -1);
  for (int x = 0; x < order; ++x) {
    if (coset_min[x] >= 0) continue;
    int lo = x;  // elements are scanned in increasing order
    for (int a : n.elements) coset_min[g.mul(x, a)] = lo;
  }
  std::vector<int> reps;
  for (int x = 0; x < order; ++x) {
    if (coset_min[x] == x) reps.push_back(x);
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> index_of(order, -1);
  for (int i = 0; i < q; ++i) index_of[reps[i]] = i;

  std::vector<int> flat(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      flat[static_cast<std::size_t>(i) * q + j] = index_of[coset_min[g.mul(reps[i], reps[j])]];
    }
  }
  std::vector<std::string> labels(q);
  for (int i = 0; i < q; ++i) labels[i] = g.label(reps[i]) + "N";

  Quotient out;
  out.group = FiniteGroup::trusted(std::move(flat), q, std::move(labels));
  out.reps = std::move(reps);
  out.projection.domain = n.parent;
  out.projection.codomain = out.group;
  out.projection.image.resize(order);
  for (int x = 0; x < order; ++x) out.projection.image[x] = index_of[coset_min[x]];
  if (!out.projection.verify_hom()) throw Error("quotient projection failed verification");
  return out;
}

Transversal transversal(const Quotient& q) {
  // Quotient representatives are already minimal per coset, identity first.
  return Transversal{q.projection.domain, q.group, q.reps};
}

DirectProductCheck internal_direct_product_check(const GroupPtr& g,
                                                 const std::vector<Subgroup>& parts) {
  if (parts.empty()) throw Error("no parts given");
  for (const auto& p : parts) {
    if (p.parent != g) throw MixedParents("part has a different parent");
  }
  std::vector<int> all;
  for (const auto& p : parts) {
    all.insert(all.end(), p.elements.begin(), p.elements.end());
  }
  const Subgroup product = subgroup_from_elements(g, close_under_mult(*g, all));
  const InducedGroup prod_grp = subgroup_as_group(product);

  DirectProductCheck out;
  std::string fail;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> inside;
    for (int x : parts[i].elements) inside.push_back(prod_grp.from_parent[x]);
    if (!is_normal(Subgroup{prod_grp.group, inside, {}})) {
      fail += "part " + std::to_string(i) + " not normal in the join; ";
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> others;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j != i) others.insert(others.end(), parts[j].elements.begin(), parts[j].elements.end());
    }
    const auto rest = subgroup_from_elements(g, close_under_mult(*g, others));
    const auto meet = intersection(parts[i], rest);
    if (!meet.is_trivial()) {
      fail += "part " + std::to_string(i) + " meets the product of the others (order " +
              std::to_string(meet.order()) + "); ";
    }
  }
  long long expected = 1;
  for (const auto& p : parts) expected *= p.order();
  if (expected != product.order()) {
    fail += "orders multiply to " + std::to_string(expected) + " != " +
            std::to_string(product.order()) + "; ";
  }
  out.ok = fail.empty();
  out.witness = fail;
  return out;
}

std::vector<Subgroup> normal_subgroups(const GroupPtr& g) {
  std::set<std::vector<int>> found;
  found.insert({0});

  // Normal closures of all cyclic subgroups.
  for (int x = 1; x < g->order(); ++x) {
    std::vector<int> seed;
    for (int c = 0; c < g->order(); ++c) seed.push_back(g->conj(c, x));
    found.insert(close_under_mult(*g, seed));
  }

  // Close under join.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(found.begin(), found.end());
    for (std::size_t i = 0; i < snapshot.size() && !grew; ++i) {
      for (std::size_t j = i + 1; j < snapshot.size() && !grew; ++j) {
        std::vector<int> seed = snapshot[i];
        seed.insert(seed.end(), snapshot[j].begin(), snapshot[j].end());
        auto joined = close_under_mult(*g, seed);
        if (found.insert(joined).second) grew = true;
      }
    }
  }

  std::vector<Subgroup> out;
  for (const auto& elems : found) out.push_back(subgroup_from_elements(g, elems));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

InducedGroup subgroup_as_group(const Subgroup& h) {
  const auto& g = *h.parent;
  const int n = h.order();
  InducedGroup out;
  out.to_parent = h.elements;
  out.from_parent.assign(g.order(), -1);
  for (int i = 0; i < n; ++i) out.from_parent[h.elements[i]] = i;

  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int prod = g.mul(h.elements[i], h.elements[j]);
      const int idx = out.from_parent[prod];
      if (idx < 0) throw Error("element set is not closed under multiplication");
      flat[static_cast<std::size_t>(i) * n + j] = idx;
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = g.label(h.elements[i]);
  }
  out.group = FiniteGroup::trusted(std::move(flat), n, std::move(labels));
  return out;
}

}  // namespace kk
