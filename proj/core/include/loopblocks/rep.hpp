#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "loopblocks/group.hpp"

namespace loopblocks {

using cplx = std::complex<double>;

// Complex irreducible characters per conjugacy class. Irrep 0 is always the
// trivial one; the rest are sorted by (dimension, lexicographic character
// vector by (real, imag)).
struct CharacterTable {
  FiniteGroup group;
  ConjugacyData conj;
  int num_irreps = 0;
  std::vector<std::vector<cplx>> chars;  // irreps x classes
  std::vector<int> dims;                 // d_alpha
  std::vector<int> class_sizes;

  cplx chi(int alpha, Elem x) const { return chars[alpha][conj.class_of[x]]; }
  int order() const { return group.order(); }
};

// Burnside/Dixon: simultaneous eigen-decomposition of the class-sum
// structure-constant matrices via a random real combination. Retries with a
// fresh seed on a degenerate draw, fails after 16 attempts.
CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed = 2026,
                               int order_cap = 100);

struct FSData {
  std::vector<int> iota;  // per irrep, in {-1, 0, +1}
};

FSData fs_indicators(const CharacterTable& ct);

// Index of the irrep with the complex-conjugate character row.
int conjugate_irrep(const CharacterTable& ct, int alpha);

// nu_q^alpha = (1/|G|) sum_g chi^alpha(g^q); real for all q.
double higher_fs(const CharacterTable& ct, long long q, int alpha);

// R_{gamma,n}(c) = sum_alpha (|G|/d_alpha)^(2 gamma + n - 2) prod_j chi(c_j):
// the number of homomorphism solutions on an orientable genus-gamma surface
// with n boundary circles pinned to the classes of c. Requires 2 gamma+n >= 1.
long long R_count(const CharacterTable& ct, int gamma, int n,
                  const std::vector<Elem>& c);

// Non-orientable counterpart with k crosscaps:
// K_{k,n}(c) = sum_alpha iota_alpha^k (|G|/d_alpha)^(k + n - 2) prod chi(c_j).
long long K_count(const CharacterTable& ct, int k, int n,
                  const std::vector<Elem>& c);

// |G|^n R_{gamma,0} and |G|^n K_{k,0}: left-hand sides of the gluing
// identities, well-defined integers even when the bare class function is not.
long long glued_dof_orient(const CharacterTable& ct, int gamma, int n);
long long glued_dof_nonorient(const CharacterTable& ct, int k, int n);

// (1/|G|) sum_alpha d_alpha chi^alpha(x): 1 iff x is the identity.
int regular_delta(const CharacterTable& ct, Elem x);

// Rounds a numerically-integer value, throwing consistency_error when it is
// not within tolerance of an integer (or has a stray imaginary part).
long long round_integer(cplx z, const char* what, double tol = 1e-6);

}  // namespace loopblocks
