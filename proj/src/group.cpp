#include "kk/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kk {

namespace {

std::size_t cells(int order) {
  return static_cast<std::size_t>(order) * static_cast<std::size_t>(order);
}

}  // namespace

GroupPtr FiniteGroup::build_checked(std::vector<int> flat, int order,
                                    std::vector<std::string> labels,
                                    bool check_associativity) {
  if (order <= 0) throw NotAGroup("empty table");
  if (flat.size() != cells(order)) throw NotAGroup("table is not square");
  for (int v : flat) {
    if (v < 0 || v >= order) throw NotAGroup("table entry out of range", {v});
  }
  auto at = [&](int x, int y) { return flat[static_cast<std::size_t>(x) * order + y]; };

  // Locate the identity and relabel it to index 0 if needed.
  int e = -1;
  for (int cand = 0; cand < order && e < 0; ++cand) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x) {
      ok = at(cand, x) == x && at(x, cand) == x;
    }
    if (ok) e = cand;
  }
  if (e < 0) throw NotAGroup("no identity element");
  if (e != 0) {
    std::vector<int> sigma(order);
    std::iota(sigma.begin(), sigma.end(), 0);
    sigma[0] = e;
    sigma[e] = 0;  // sigma is an involution: old index -> new index
    std::vector<int> relabeled(flat.size());
    for (int x = 0; x < order; ++x) {
      for (int y = 0; y < order; ++y) {
        relabeled[static_cast<std::size_t>(sigma[x]) * order + sigma[y]] =
            sigma[at(x, y)];
      }
    }
    flat.swap(relabeled);
    if (!labels.empty()) std::swap(labels[0], labels[e]);
  }

  // Rows and columns must be permutations of 0..order-1.
  std::vector<char> seen(order);
  for (int x = 0; x < order; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < order; ++y) seen[at(x, y)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw NotAGroup("row is not a permutation", {x});
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < order; ++y) seen[at(y, x)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw NotAGroup("column is not a permutation", {x});
    }
  }

  std::vector<int> inv(order, -1);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      if (at(x, y) == 0) {
        if (at(y, x) != 0) throw NotAGroup("one-sided inverse", {x, y});
        inv[x] = y;
        break;
      }
    }
    if (inv[x] < 0) throw NotAGroup("element has no inverse", {x});
  }

  if (check_associativity) {
    for (int x = 0; x < order; ++x) {
      for (int y = 0; y < order; ++y) {
        const int xy = at(x, y);
        for (int z = 0; z < order; ++z) {
          if (at(xy, z) != at(x, at(y, z))) {
            throw NotAGroup("associativity fails", {x, y, z});
          }
        }
      }
    }
  }

  if (!labels.empty() && labels.size() != static_cast<std::size_t>(order)) {
    throw NotAGroup("label count does not match order");
  }

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = order;
  g->table_ = std::move(flat);
  g->inv_ = std::move(inv);
  g->labels_ = std::move(labels);
  return g;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                 std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  std::vector<int> flat;
  flat.reserve(cells(n));
  for (const auto& row : table) {
    if (row.size() != table.size()) throw NotAGroup("table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return build_checked(std::move(flat), n, std::move(labels), true);
}

GroupPtr FiniteGroup::trusted(std::vector<int> flat_table, int order,
                              std::vector<std::string> labels) {
  return build_checked(std::move(flat_table), order, std::move(labels), false);
}

GroupPtr FiniteGroup::from_permutations(int degree,
                                        const std::vector<std::vector<int>>& gens,
                                        std::size_t max_cells) {
  if (degree <= 0) throw Error("permutation degree must be positive");
  for (const auto& p : gens) {
    if (p.size() != static_cast<std::size_t>(degree)) {
      throw Error("generator degree mismatch");
    }
    std::vector<char> hit(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[v]) throw Error("generator is not a bijection");
      hit[v] = 1;
    }
  }

  // p*q means "apply p, then q".
  auto compose = [degree](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = q[p[i]];
    return r;
  };

  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  const std::size_t max_order = [max_cells] {
    std::size_t n = 1;
    while (cells(static_cast<int>(n + 1)) <= max_cells) ++n;
    return n;
  }();
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : gens) {
      auto next = compose(elems[head], gen);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > max_order) {
          throw SizeCap("permutation closure exceeds the table cap");
        }
      }
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<int> flat(cells(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      flat[static_cast<std::size_t>(x) * n + y] = index.at(compose(elems[x], elems[y]));
    }
  }
  return build_checked(std::move(flat), n, {}, false);
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n <= 0) throw Error("cyclic group order must be positive");
  std::vector<int> flat(cells(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      flat[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
    }
  }
  return build_checked(std::move(flat), n, {}, false);
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int na = a->order();
  const int nb = b->order();
  const long long n = static_cast<long long>(na) * nb;
  if (cells(static_cast<int>(n)) > kDefaultMaxTableCells * 100) {
    throw SizeCap("direct product exceeds the table cap");
  }
  std::vector<int> flat(cells(static_cast<int>(n)));
  auto enc = [nb](int x, int y) { return x * nb + y; };
  for (int xa = 0; xa < na; ++xa) {
    for (int xb = 0; xb < nb; ++xb) {
      for (int ya = 0; ya < na; ++ya) {
        for (int yb = 0; yb < nb; ++yb) {
          flat[static_cast<std::size_t>(enc(xa, xb)) * n + enc(ya, yb)] =
              enc(a->mul(xa, ya), b->mul(xb, yb));
        }
      }
    }
  }
  std::vector<std::string> labels;
  if (a->has_labels() || b->has_labels()) {
    labels.resize(n);
    for (int xa = 0; xa < na; ++xa) {
      for (int xb = 0; xb < nb; ++xb) {
        labels[enc(xa, xb)] = "(" + a->label(xa) + "," + b->label(xb) + ")";
      }
    }
  }
  return build_checked(std::move(flat), static_cast<int>(n), std::move(labels), false);
}

GroupPtr FiniteGroup::direct_power(const GroupPtr& a, int m) {
  if (m < 0) throw Error("direct power exponent must be nonnegative");
  GroupPtr acc = cyclic(1);
  for (int i = 0; i < m; ++i) acc = direct_product(acc, a);
  return acc;
}

int FiniteGroup::power(int x, long long e) const {
  int base = x;
  if (e < 0) {
    base = inv(x);
    e = -e;
  }
  int acc = 0;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(int x) const {
  int acc = x;
  int k = 1;
  while (acc != 0) {
    acc = mul(acc, x);
    ++k;
  }
  return k;
}

long long FiniteGroup::exponent() const {
  long long acc = 1;
  for (int x = 0; x < order_; ++x) {
    acc = std::lcm(acc, static_cast<long long>(element_order(x)));
  }
  return acc;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order_; ++x) {
    for (int y = x + 1; y < order_; ++y) {
      if (mul(x, y) != mul(y, x)) return false;
    }
  }
  return true;
}

std::string FiniteGroup::label(int x) const {
  if (labels_.empty()) return std::to_string(x);
  return labels_[x];
}

bool Subgroup::contains(int x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool GroupMap::verify_hom() {
  verified_hom = false;
  if (image.size() != static_cast<std::size_t>(domain->order())) return false;
  if (image[0] != 0) return false;
  const int n = domain->order();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (image[domain->mul(x, y)] != codomain->mul(image[x], image[y])) {
        return false;
      }
    }
  }
  verified_hom = true;
  return true;
}

bool GroupMap::verify_injective() {
  verified_injective = false;
  std::vector<int> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  verified_injective = true;
  return true;
}

bool GroupMap::is_bijective() const {
  if (domain->order() != codomain->order()) return false;
  std::vector<char> hit(codomain->order(), 0);
  for (int v : image) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

GroupMap GroupMap::identity(const GroupPtr& g) {
  GroupMap m;
  m.domain = g;
  m.codomain = g;
  m.image.resize(g->order());
  std::iota(m.image.begin(), m.image.end(), 0);
  m.verified_hom = true;
  m.verified_injective = true;
  return m;
}

GroupMap GroupMap::compose(const GroupMap& first, const GroupMap& second) {
  if (first.codomain != second.domain) {
    throw Error("composed maps do not chain");
  }
  GroupMap m;
  m.domain = first.domain;
  m.codomain = second.codomain;
  m.image.resize(first.image.size());
  for (std::size_t i = 0; i < first.image.size(); ++i) {
    m.image[i] = second.image[first.image[i]];
  }
  return m;
}

}  // namespace kk
