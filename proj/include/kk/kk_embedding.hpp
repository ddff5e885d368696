#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kk/group.hpp"
#include "kk/subgroups.hpp"
#include "kk/wreath.hpp"

namespace kk {

/// Everything needed to evaluate the wreath embeddings of a subnormal
/// series G > A > C: the quotient B = G/A with projection, a normalized
/// transversal (identity to identity, minimal-index representatives), and
/// Abar = A/C with its projection.
struct KKContext {
  GroupPtr g;
  Subgroup a;  // normal in G
  Subgroup c;  // normal in A, trivial core in G
  Quotient quo;        // B = G/A
  Transversal sect;    // s : B -> G
  InducedGroup a_grp;  // A as a standalone group
  Subgroup c_in_a;
  Quotient abar;       // Abar = A/C, quotient of a_grp

  int b_order() const { return quo.group->order(); }
};

/// Builds and validates a context. Throws NotNormal if A is not normal in
/// G or C not normal in A, and CoreNotTrivial (with the core as witness)
/// if C contains a nontrivial subgroup normal in G. A custom transversal
/// section may be supplied; it must satisfy pi(section[b]) = b and
/// section[1] = 1.
KKContext make_kk_context(const GroupPtr& g, Subgroup a, Subgroup c,
                          std::optional<std::vector<int>> section = std::nullopt);

/// Result of evaluating an embedding formula on every element of G.
/// The homomorphism and injectivity checks run on wreath elements, so they
/// work even when the target is too large to materialize; `target`/`map`
/// are only populated when the full table fits the cap.
struct Embedding {
  WreathProduct wreath;              // bottom is A (full) or Abar (reduced)
  std::vector<WreathElement> images;  // indexed by elements of G
  bool hom_verified = false;          // checked on all |G|^2 pairs
  bool kernel_trivial = false;
  bool injective = false;             // images pairwise distinct
  GroupPtr target;                    // materialized wreath or nullptr
  GroupMap map;                       // into `target`, when materialized

  bool verified() const { return hom_verified && injective && kernel_trivial; }
};

/// The full embedding g -> (pi(g), f_g) into A Wr B, where
/// f_g(x) = (x pi(g)^{-1})^s g (x^s)^{-1}. Requires trivial C.
Embedding kk_full(const KKContext& ctx,
                  std::size_t max_cells = kDefaultMaxTableCells);

/// The reduced embedding g -> (pi(g), fbar_g) into Abar Wr B, with the base
/// values taken mod C. Computed directly from the formula, not by composing
/// with a materialized full embedding, so a small Abar stays feasible even
/// when A Wr B does not.
Embedding kk_reduced(const KKContext& ctx,
                     std::size_t max_cells = kDefaultMaxTableCells);

struct Prop1Report {
  bool a_maps_into_base = false;
  unsigned long long product_size = 0;  // |kappa(G) * Fbar|
  unsigned long long wreath_size = 0;   // |Abar Wr B|
  bool product_covers = false;
  bool injective = false;
  bool ok() const { return a_maps_into_base && product_covers && injective; }
};

/// Enumerative check of the containment kappa(A) <= Fbar, the covering
/// kappa(G) Fbar = Abar Wr B, and injectivity.
Prop1Report verify_prop1(const KKContext& ctx, const Embedding& emb);

struct SplitCheckReport {
  std::vector<Subgroup> conjugates;  // H first
  Subgroup a;                        // join of all conjugates
  bool a_normal = false;
  DirectProductCheck direct;
  Subgroup normalizer_h;
  bool normalizer_equals_a = false;
  int n = 0;  // number of conjugates = |B| when the hypotheses hold
  bool quotient_order_matches = false;

  bool ok() const {
    return a_normal && direct.ok && normalizer_equals_a && quotient_order_matches;
  }
  std::string failing() const;
};

/// Hypothesis check for the wreath-splitting theorem: A = product of the
/// conjugates of H as a direct product, and N_G(H) = A.
SplitCheckReport theorem1_check(const GroupPtr& g, const Subgroup& h);

struct SplitResult {
  SplitCheckReport check;
  GroupPtr target;  // H Wr B materialized
  GroupMap iso;     // bijective verified homomorphism G -> target
  bool image_of_a_is_base = false;
};

/// Constructive splitting: runs the reduced embedding with C the product of
/// the other conjugates, identifies A/C with H, and returns the verified
/// isomorphism G -> H Wr B. Throws HypothesisFailed when the check fails.
/// A trivial H (forcing trivial A and B = G) short-circuits to the
/// degenerate isomorphism G -> 1 Wr G.
SplitResult theorem1_split(const GroupPtr& g, const Subgroup& h,
                           std::size_t max_cells = kDefaultMaxTableCells);

}  // namespace kk
