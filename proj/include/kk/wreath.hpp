#pragma once

#include <optional>
#include <vector>

#include "kk/group.hpp"
#include "kk/subgroups.hpp"

namespace kk {

/// Element of A Wr B in its canonical pair form: the product b*f with top
/// element b of B and total base function f : B -> A stored as an array
/// over the elements of B.
struct WreathElement {
  int top = 0;
  std::vector<int> base;

  friend bool operator==(const WreathElement& u, const WreathElement& v) {
    return u.top == v.top && u.base == v.base;
  }
  friend bool operator<(const WreathElement& u, const WreathElement& v) {
    if (u.top != v.top) return u.top < v.top;
    return u.base < v.base;
  }
};

/// The complete wreath product A Wr B = B ⋉ F with F all functions B -> A
/// and B shifting arguments: (b∘f)(x) = f(xb^{-1}).
class WreathProduct {
 public:
  WreathProduct(GroupPtr bottom, GroupPtr top);

  const GroupPtr& bottom() const { return bottom_; }
  const GroupPtr& top() const { return top_; }

  WreathElement identity() const;
  /// Canonical injection of a bottom value supported at one position.
  WreathElement base_embed(int value, int position) const;
  WreathElement top_embed(int b) const;

  /// The shift g(x) = f(x b^{-1}); this is exactly conjugation b^{-1} f b.
  std::vector<int> shift(int b, const std::vector<int>& f) const;

  WreathElement multiply(const WreathElement& u, const WreathElement& v) const;
  WreathElement inverse(const WreathElement& u) const;

  /// |A|^|B| * |B|, or nullopt on 64-bit overflow.
  std::optional<unsigned long long> element_count() const;

  /// Lexicographic rank of (top, base tuple); requires element_count().
  unsigned long long encode(const WreathElement& u) const;
  WreathElement decode(unsigned long long index) const;

  /// Full multiplication table, elements ordered by encode(). Throws
  /// SizeCap when the table would exceed `max_cells`.
  GroupPtr materialize(std::size_t max_cells = kDefaultMaxTableCells) const;

  /// Base-coordinate subgroup of a materialized wreath product: functions
  /// supported at `position` only, with trivial top.
  Subgroup coordinate_subgroup(const GroupPtr& materialized, int position) const;
  /// The normal base subgroup {(1, f)} of a materialized wreath product.
  Subgroup base_subgroup(const GroupPtr& materialized) const;
  Subgroup top_subgroup(const GroupPtr& materialized) const;

 private:
  GroupPtr bottom_;
  GroupPtr top_;
};

/// The map (b, f) -> (b, h∘f) induced on wreath elements by h : A -> Abar.
WreathElement lift_apply(const GroupMap& h, const WreathElement& u);

/// Materialized form of the induced map h Wr B : A Wr B -> Abar Wr B, with
/// the homomorphism property checked exhaustively.
GroupMap lift_hom(const GroupMap& h, const WreathProduct& source,
                  const WreathProduct& target, const GroupPtr& source_grp,
                  const GroupPtr& target_grp);

/// The finite-index blow-up isomorphism: for B of index m in an abelian
/// group B0 with left transversal t (so the translates t_i B tile B0), the
/// subgroup B ⋉ F(B0, D) of D Wr B0 is isomorphic to (D^m) Wr B via
/// f(b) = (f0(t_1 b), ..., f0(t_m b)), identically on B.
struct BlowupResult {
  GroupPtr domain;  // B ⋉ F(B0,D) reindexed as a standalone group
  GroupPtr target;  // (D^m) Wr B materialized
  GroupMap iso;     // verified bijective homomorphism
};

BlowupResult index_blowup_iso(const GroupPtr& d, const GroupPtr& b0,
                              const Subgroup& b, const std::vector<int>& t,
                              std::size_t max_cells = kDefaultMaxTableCells);

}  // namespace kk
