#pragma once

#include <cstdint>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// Eight roots lambda_i + f_c + a_i e_c of N + U^4 forming an E8(-1) Dynkin
/// diagram (catalog labelling), with lambda_i in the invariant lattice.
struct RootConfiguration {
  std::vector<IntVector> invariant_parts;  // in invariant-lattice coordinates
  std::vector<int> colors;                 // which U copy carries the root
};

struct MukaiEmbedding {
  IntMatrix map;  // rows: images of the coinvariant basis in Mukai coordinates
  RootConfiguration roots;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kRootConfigurationCap = 5'000'000;

/// Primitive embedding of the coinvariant lattice of a negative definite even
/// unimodular rank-24 lattice N into the Mukai lattice. The complement of the
/// root configuration in N + U^4 contains the coinvariant lattice and is split
/// into four hyperbolic planes and two E8(-1) blocks, which identifies it with
/// the Mukai lattice. Both arguments are mutually orthogonal primitive
/// sublattices of the same N. Throws Precondition when the invariant lattice
/// has rank < 4, NotFoundWithinBounds / ResourceCap when the bounded searches
/// give up.
MukaiEmbedding embed_coinvariant_in_mukai(const Lattice& coinvariant, const Lattice& invariant,
                                          std::uint64_t node_cap = kRootConfigurationCap);

}  // namespace k3lat
