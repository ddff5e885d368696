#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "kk/errors.hpp"

namespace kk {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Hard cap on materialized multiplication tables (order^2 cells).
inline constexpr std::size_t kDefaultMaxTableCells = 1'000'000;

/// A finite group given by its full multiplication table. The identity is
/// always element 0; tables whose identity sits elsewhere are relabeled on
/// ingestion. Instances are immutable after construction.
class FiniteGroup {
 public:
  /// Validates a square table: entries in range, identity, inverses,
  /// row/column permutations, and associativity on all triples.
  /// Throws NotAGroup with a witness on failure.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table,
                             std::vector<std::string> labels = {});

  /// Closure of permutation generators on `degree` points, by the orbit
  /// algorithm on words. The identity gets index 0; further elements are
  /// indexed in discovery order. Throws SizeCap when the closure would
  /// exceed `max_cells` table cells.
  static GroupPtr from_permutations(int degree,
                                    const std::vector<std::vector<int>>& gens,
                                    std::size_t max_cells = kDefaultMaxTableCells);

  /// Z/n under addition.
  static GroupPtr cyclic(int n);

  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
  static GroupPtr direct_power(const GroupPtr& a, int m);

  /// Construction path for tables obtained from known group structure
  /// (quotients, subgroup reindexing, materialized semidirect products).
  /// Checks identity, inverses and the permutation property, but takes
  /// associativity from the construction.
  static GroupPtr trusted(std::vector<int> flat_table, int order,
                          std::vector<std::string> labels = {});

  int order() const { return order_; }
  int mul(int x, int y) const {
    return table_[static_cast<std::size_t>(x) * order_ + y];
  }
  int inv(int x) const { return inv_[x]; }
  /// g x g^{-1}
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int power(int x, long long e) const;
  int element_order(int x) const;
  long long exponent() const;
  bool is_abelian() const;

  bool has_labels() const { return !labels_.empty(); }
  /// Display string for an element (its label, or the index).
  std::string label(int x) const;

 private:
  FiniteGroup() = default;
  static GroupPtr build_checked(std::vector<int> flat, int order,
                                std::vector<std::string> labels,
                                bool check_associativity);

  int order_ = 1;
  std::vector<int> table_;  // row-major, order x order
  std::vector<int> inv_;
  std::vector<std::string> labels_;  // empty, or one per element
};

/// A subgroup of `parent`, stored as the strictly sorted list of its
/// elements together with a generating set used as witness.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;
  std::vector<int> generators;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int x) const;
  bool is_trivial() const { return elements.size() == 1; }
};

/// A total map between finite groups with verification flags. The flags are
/// only set by the exhaustive checks below.
struct GroupMap {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<int> image;
  bool verified_hom = false;
  bool verified_injective = false;

  int operator()(int x) const { return image[x]; }

  /// Checks image[xy] = image[x] image[y] over all pairs; sets verified_hom.
  bool verify_hom();
  /// Checks pairwise distinctness of images; sets verified_injective.
  bool verify_injective();
  bool is_bijective() const;

  static GroupMap identity(const GroupPtr& g);
  /// x -> second(first(x)); requires first.codomain == second.domain.
  static GroupMap compose(const GroupMap& first, const GroupMap& second);
};

/// A section of the projection G -> B: section[b] is a representative of the
/// coset b, with section[identity] = identity.
struct Transversal {
  GroupPtr parent;    // G
  GroupPtr quotient;  // B
  std::vector<int> section;
};

}  // namespace kk
