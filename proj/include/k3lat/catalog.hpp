#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// Binary code of length 24; bit i of a word is coordinate i.
struct BinaryCode {
  std::vector<std::uint32_t> generator;  // 12 rows

  std::vector<std::uint32_t> codewords() const;  // all 2^k, sorted
  bool contains(std::uint32_t word) const;
};

using Permutation = std::array<int, 24>;  // i -> p[i]

Lattice make(const std::string& name);
std::vector<std::string> catalog_names();

/// Extended binary Golay code: the cyclic length-23 quadratic-residue code
/// generated by 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11, plus a parity bit at 23.
const BinaryCode& golay();
/// Weight distribution indexed by weight 0..24.
std::array<std::uint64_t, 25> weight_distribution(const BinaryCode& c);
std::string to_hex(std::uint32_t word);  // 6 hex digits, coordinate 0 is the lowest bit

bool is_permutation(const Permutation& p);
Permutation compose(const Permutation& a, const Permutation& b);  // apply a, then b
Permutation power(const Permutation& p, long k);
Permutation identity_permutation();
std::uint32_t apply(const Permutation& p, std::uint32_t word);
bool preserves_code(const Permutation& p, const BinaryCode& c);
/// Sorted cycle lengths, fixed points included.
std::vector<int> cycle_type(const Permutation& p);
long order(const Permutation& p);

/// Coordinates are GF(23) with infinity = 23: i -> i+1, i -> 2i, i -> -1/i,
/// and the extra generator x -> x^3/9 on squares, 9x^3 on non-squares.
/// Each is checked against the Golay code on first use.
const std::vector<Permutation>& m24_generators();

/// Deterministically chosen code automorphisms with the given cycle type,
/// e.g. {1,1,...,2,2,...}: "1^8 2^8" and "1^6 3^6" are the curated ones.
Permutation curated_m24_element(const std::string& cycle_label);
std::vector<std::string> curated_m24_labels();

/// Basis of the Leech lattice in coordinates scaled by sqrt 8 (rows), and the
/// lattice itself (negative definite).
const IntMatrix& leech_scaled_basis();
/// Matrix of the coordinate permutation in the stored Leech basis; throws
/// NotCodeAutomorphism when it is not an isometry of the lattice.
IntMatrix perm_isometry_on_leech(const Permutation& p);

/// Gamma = Leech + U; the Weyl vector is the first U generator (coordinate 24).
IntVector weyl_vector();
bool is_leech_root(const IntVector& d);
Lattice gamma_mod_w();

/// Mukai lattice coordinates: (r, 22 coordinates of the K3 lattice, s) with
/// pairing c.c' - r s' - r' s. The K3 part is E8(-1) + E8(-1) + U + U + U.
inline constexpr std::size_t kMukaiRank = 24;
std::vector<std::size_t> mukai_k3_indices();       // 1..22
std::vector<std::size_t> mukai_hyperbolic_indices();  // 0 and 23
/// Row-convention isometry (r, c, s) -> (r, c + r b, s + (b.c) + r (b.b)/2).
IntMatrix exp_b(const IntVector& beta);
struct PeriodVectors {
  RatVector re;
  RatVector im;
};
PeriodVectors period_vector(const RatVector& b, const RatVector& alpha);

IntMatrix e8_cartan();

}  // namespace k3lat
