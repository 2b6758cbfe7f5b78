#pragma once

#include <cstdint>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

inline constexpr std::uint64_t kDefaultNodeCap = 100'000'000;

struct ShortVector {
  IntVector v;
  Integer norm;
  bool operator==(const ShortVector&) const = default;
};

/// Every v != 0 with (v, v) <= bound for positive definite L, one per sign
/// class (first nonzero coordinate positive), sorted lexicographically.
/// Throws NotPositiveDefinite, or ResourceCap once `node_cap` search nodes are used.
std::vector<ShortVector> short_vectors(const Lattice& l, const Integer& bound,
                                       std::uint64_t node_cap = kDefaultNodeCap);

/// Vectors of norm -2 of a negative definite lattice, in the same canonical form.
std::vector<IntVector> roots(const Lattice& l, std::uint64_t node_cap = kDefaultNodeCap);

/// Roots of the saturated complement of P, in ambient coordinates. Throws
/// ComplementNotDefinite unless that complement is negative definite.
std::vector<IntVector> roots_in_complement(const RationalSubspace& p, std::uint64_t node_cap = kDefaultNodeCap);

struct BoxSearch {
  std::vector<IntVector> vectors;
  bool truncated = false;  // stopped after max_results hits
  std::uint64_t nodes = 0;
};

struct BoxOptions {
  std::uint64_t max_results = UINT64_MAX;
  std::uint64_t node_cap = kDefaultNodeCap;
};

/// Vectors with coordinates in [-coord_bound, coord_bound] and lo <= (v, v) <= hi,
/// one per sign class, lexicographic order. A bounded search: it says nothing
/// about vectors outside the box.
BoxSearch box_vectors_in_range(const Lattice& l, const Integer& lo, const Integer& hi, long coord_bound,
                               const BoxOptions& opts = {});
BoxSearch box_vectors_of_norm(const Lattice& l, const Integer& norm, long coord_bound, const BoxOptions& opts = {});

/// Flips v so that its first nonzero coordinate is positive.
void canonical_sign(IntVector& v);

}  // namespace k3lat
