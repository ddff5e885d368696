#pragma once

#include <string>
#include <vector>

#include "kk/group.hpp"
#include "kk/intmat.hpp"
#include "kk/subgroups.hpp"

namespace kk {

/// Unimodular basis of Z^k, rows of `basis`, with `inverse` its exact
/// inverse and `target_rows` the rows holding caller-designated vectors.
struct LatticeBasis {
  int rank = 0;
  IntMatrix basis;
  IntMatrix inverse;
  std::vector<int> target_rows;
};

/// Completes a primitive vector to a basis of Z^k with the vector as the
/// first row. Throws NotPrimitive when the entries' gcd is not 1.
LatticeBasis extend_to_basis(const std::vector<BigInt>& g);

struct HyperplaneReport {
  int bound = 0;               // multiples checked one by one
  std::vector<int> positions;  // basis row index per target
  bool unit_coordinates = false;   // targets are unit vectors in the new basis
  bool multiples_avoided = false;  // sum of m*g_i coordinates equals m != 0
  bool all_m_argument = false;     // coordinate sum of g_i is 1, covering all m
  bool ok() const {
    return unit_coordinates && multiples_avoided && all_m_argument;
  }
};

/// Round-by-round basis transformation: target i, supported on the window
/// (cutoffs[i-1], cutoffs[i]] in 1-based coordinates and primitive there,
/// becomes the basis vector at the window's first slot; coordinates outside
/// every window keep their standard basis vectors. The report certifies
/// that no multiple of any target lies in the sum-zero hyperplane of the
/// new coordinates.
std::pair<LatticeBasis, HyperplaneReport> lemma_cb_rounds(
    int k, const std::vector<std::vector<BigInt>>& targets,
    const std::vector<int>& cutoffs, int bound = 100);

struct RankOneReport {
  std::vector<BigInt> sigma;  // coordinate-sum functional, v -> v . sigma
  bool basis_rows_map_to_one = false;
  bool hyperplane_in_kernel = false;
  std::vector<BigInt> h_invariants;  // Smith invariants of the inclusion
  bool quotient_is_z = false;
  bool ok() const {
    return basis_rows_map_to_one && hyperplane_in_kernel && quotient_is_z;
  }
};

/// Certifies Z^k / H == Z for the sum-zero hyperplane H of the given basis,
/// both through the explicit coordinate-sum epimorphism and through the
/// Smith form of H's inclusion matrix.
RankOneReport quotient_rank_one_check(const LatticeBasis& basis);

/// Sylow decomposition of a finite abelian subgroup.
struct FiniteAbelianDecomp {
  Subgroup a;
  std::vector<int> primes;
  std::vector<Subgroup> blocks;  // one per prime, |A| = product of orders
  long long exponent = 1;
};

FiniteAbelianDecomp sylow_decomposition(const Subgroup& a);

/// Elements of a finite abelian p-group killed by p.
Subgroup socle_p(const Subgroup& a_p, int p);

/// Every subgroup of a small group, sorted by (order, element list).
/// Throws SizeCap above `max_order`.
std::vector<Subgroup> all_subgroups(const Subgroup& ambient,
                                    int max_order = 64);

/// Largest subgroup E of A_p with E meet socle = C_p (ties broken by
/// lexicographic element list). Postconditions checked: the quotient is a
/// p-group whose order-p elements all come from the socle's image.
Subgroup maximal_Ep(const Subgroup& a_p, const Subgroup& c_p);

struct LemmaCcResult {
  Subgroup c;
  std::vector<int> primes;
  std::vector<Subgroup> c_blocks;  // C_p per prime
  std::vector<Subgroup> e_blocks;  // E_p per prime
  std::vector<Subgroup> f_blocks;  // F_p per prime
  bool core_trivial = false;
  bool exponent_divides = false;  // exponent(A/C) divides exponent(A)
  struct CertEntry {
    std::vector<int> normal_elements;  // a normal subgroup N with 1 < N <= A
    int witness;                       // element of N outside C
  };
  std::vector<CertEntry> certificate;
};

/// Intersection C of the per-prime subgroups F_p = E_p + sum of the other
/// Sylow blocks, where C_p is the sum-zero hyperplane of a socle basis
/// adapted to the minimal G-normal subgroups. Throws NoValidCp when the
/// prescribed C_p has a nontrivial core.
LemmaCcResult lemma_cc_C(const GroupPtr& g, const Subgroup& a);

/// Decomposition of a finitely generated abelian group (given by an
/// integer relation matrix, rows = relators) into torsion and free parts.
struct TorsionComplement {
  std::vector<BigInt> diagonal;  // invariant per generator slot, 0 = free
  std::vector<std::vector<BigInt>> t_gens;  // torsion generators
  std::vector<BigInt> t_orders;
  std::vector<std::vector<BigInt>> k_gens;  // free generators
  BigInt torsion_order = 1;
  int free_rank = 0;
  bool basis_unimodular = false;  // the combined generator matrix is a basis
};

TorsionComplement torsion_complement(const IntMatrix& relations);

/// Injective endomorphism of B (free rank >= 1) scaling one free generator
/// by m; the image has index exactly m, verified via invariant factors of
/// the stacked relation/image matrix. Throws RankZero when B is finite.
struct SelfIndexEmbedding {
  int scaled_slot = -1;                  // generator slot that was scaled
  std::vector<BigInt> scaled_generator;  // that generator, original coords
  std::vector<BigInt> b_invariants;
  BigInt index = 0;
  bool index_matches = false;
};

SelfIndexEmbedding self_index_embedding(const IntMatrix& relations,
                                        const BigInt& m);

/// Rational with denominator dividing a power of the fixed base n.
struct DnRational {
  BigInt num;
  BigInt den;  // positive, coprime to num
  long long base;

  DnRational(BigInt n, BigInt d, long long base);
  DnRational add(const DnRational& o) const;
  bool operator==(const DnRational& o) const {
    return num == o.num && den == o.den && base == o.base;
  }
  std::string str() const;
};

}  // namespace kk
