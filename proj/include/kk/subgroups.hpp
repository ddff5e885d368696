#pragma once

#include <string>
#include <vector>

#include "kk/group.hpp"

namespace kk {

/// Quotient of G by a normal subgroup, on minimal-index coset
/// representatives. `projection` is exhaustively verified on construction.
struct Quotient {
  GroupPtr group;       // B = G/N
  GroupMap projection;  // pi : G -> B
  std::vector<int> reps;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);

/// Smallest subgroup of G containing the given elements.
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens);

/// Rebuilds a Subgroup from a closed element set, picking a small
/// generating set as witness. The set must already be a subgroup.
Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<int> elements);

bool is_normal(const Subgroup& h);

/// N_G(H) = { g : gHg^{-1} = H }.
Subgroup normalizer(const Subgroup& h);

/// Largest subgroup of C normal in G: the intersection of all conjugates.
Subgroup normal_core(const Subgroup& c);

Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);

/// Conjugation image gHg^{-1}.
Subgroup conjugate_subgroup(const Subgroup& h, int g);

/// All distinct conjugates of H, deduplicated, in first-occurrence order
/// over conjugators 0,1,2,... (so H itself comes first).
std::vector<Subgroup> conjugate_subgroups(const Subgroup& h);

/// Throws NotNormal if N is not normal in its parent.
Quotient quotient_with_projection(const Subgroup& n);

/// Minimal-index representative per coset; section[identity] = identity.
Transversal transversal(const Quotient& q);

struct DirectProductCheck {
  bool ok = false;
  // Empty on success; otherwise names every failing condition.
  std::string witness;
};

/// True iff the parts generate their internal direct product: each part is
/// normal in the join, meets the product of the others trivially, and the
/// join's order is the product of the parts' orders.
DirectProductCheck internal_direct_product_check(const GroupPtr& g,
                                                 const std::vector<Subgroup>& parts);

/// All normal subgroups of G, computed as normal closures of cyclic
/// subgroups closed under join. Sorted by (order, element list).
std::vector<Subgroup> normal_subgroups(const GroupPtr& g);

/// A subgroup reindexed as a standalone FiniteGroup. `to_parent` maps new
/// indices to parent elements; `from_parent` is the partial inverse (-1
/// outside the subgroup).
struct InducedGroup {
  GroupPtr group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;
};

InducedGroup subgroup_as_group(const Subgroup& h);

}  // namespace kk
