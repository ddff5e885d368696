#pragma once

#include <utility>
#include <vector>

#include "kk/group.hpp"
#include "kk/kk_embedding.hpp"
#include "kk/subgroups.hpp"

namespace kk {

/// Square matrix over the p-element field, entries reduced mod p.
struct FpMatrix {
  int p = 2;
  int dim = 0;
  std::vector<std::vector<int>> a;

  FpMatrix() = default;
  FpMatrix(int p, int dim);
  static FpMatrix identity(int p, int dim);

  FpMatrix multiply(const FpMatrix& o) const;
  FpMatrix pow(long long e) const;  // e >= 0
  std::vector<int> apply(const std::vector<int>& v) const;
  bool operator==(const FpMatrix& o) const {
    return p == o.p && dim == o.dim && a == o.a;
  }
  bool is_identity() const;
  /// Smallest e >= 1 with M^e = I; throws Error past `limit`.
  long long multiplicative_order(long long limit = 1'000'000) const;
};

/// One faithful irreducible block: the action of a generator of Z/qZ on
/// F_p^{d} where d is the multiplicative order of p mod q.
struct FpBlock {
  int q = 0;
  int dim = 0;
  std::vector<int> min_poly;  // monic, ascending coefficients, length dim+1
  FpMatrix action;
};

/// Companion matrix of the lexicographically smallest monic irreducible
/// factor of (x^q - 1)/(x - 1) over F_p (coefficient-tuple order).
FpBlock irreducible_action(int p, int q);

/// Block sum of the irreducible actions for the primes in S.
struct FpModuleDecomp {
  int p = 2;
  std::vector<FpBlock> blocks;  // primes ascending
  int total_dim = 0;
  FpMatrix action;  // block diagonal, order n = product of the primes
};

FpModuleDecomp build_decomp(int p, std::vector<int> s);

/// Finite truncation: b of order n = prod(S) acting blockwise on V_S.
struct TruncatedG {
  FpModuleDecomp decomp;
  long long n = 1;
  GroupPtr realized;
  Subgroup base;  // V_S, abelian normal, index n
  int b_gen = 0;  // the element (1, 0)

  int encode(long long k, const std::vector<int>& v) const;
  std::pair<long long, std::vector<int>> decode(int idx) const;
};

/// Materializes <b> |x V_S as a FiniteGroup (identity first, element
/// (k, v) at index k*p^dim + base-p digits of v). Throws SizeCap when the
/// table exceeds the cap.
TruncatedG build_truncated_G(int p, std::vector<int> s,
                             std::size_t max_cells = kDefaultMaxTableCells);

/// The sum-zero subspace of V_S in the union basis, with its certificate.
struct HyperplaneCert {
  int p = 2;
  int dim = 0;
  std::vector<std::vector<int>> basis;  // dim-1 spanning rows
  bool codim_one = false;
  bool blocks_escape = false;  // no block V_q lies inside C
  bool scan_done = false;      // brute-force submodule scan ran (p^dim small)
  bool scan_clean = false;     // no nonzero submodule inside C
  bool only_sub_sums = false;  // every submodule found is a sub-sum V_T
  int submodules_found = 0;    // nonzero submodules seen by the scan
  bool ok() const {
    return codim_one && blocks_escape && (!scan_done || scan_clean);
  }
};

HyperplaneCert hyperplane_C(const FpModuleDecomp& decomp);

/// The reduced embedding of the truncation with A = V_S and C the sum-zero
/// hyperplane: lands in (Z/pZ) Wr (Z/nZ). Verification runs on wreath
/// elements, so the order-960 case works without materializing the target.
struct Theorem3Result {
  TruncatedG trunc;
  HyperplaneCert cert;
  KKContext ctx;
  Embedding emb;
};

Theorem3Result theorem3_embed(int p, std::vector<int> s,
                              std::size_t max_cells = kDefaultMaxTableCells);

/// Sorted multiset of centralizer indices of the sub-sums V_T over all
/// T subset of S, computed from the block matrices alone (no group table).
std::vector<long long> fingerprint(int p, std::vector<int> s);

/// Random small-subgroup structure probe of the truncation: the base part
/// K meet V_S is normal with cyclic quotient, and K sits inside
/// <b> |x V_T for the sub-sum T spanned by its generators' base parts.
struct LocalStructureReport {
  struct Trial {
    std::vector<int> gens;
    bool base_part_normal = false;
    bool quotient_cyclic = false;
    bool inside_sub_sum = false;
  };
  std::vector<Trial> trials;
  bool all_ok = false;
};

LocalStructureReport local_structure_check(int p, std::vector<int> s,
                                            unsigned seed, int trials = 20);

}  // namespace kk
