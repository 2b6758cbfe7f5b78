#pragma once

#include <cstdint>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// A group of isometries of `lattice` given by generators acting on the right:
/// each g satisfies g * gram * g^T == gram.
struct GroupAction {
  Lattice lattice;
  std::vector<IntMatrix> generators;
};

/// Throws InvalidInput unless every generator is a unimodular isometry.
void validate(const GroupAction& a);

inline constexpr std::uint64_t kClosureCap = 1'000'000;

/// All group elements, sorted; throws ResourceCap when the order exceeds `cap`.
std::vector<IntMatrix> closure(const GroupAction& a, std::uint64_t cap = kClosureCap);

/// Fixed sublattice (saturated) and its orthogonal complement, both embedded
/// in a copy of the acting lattice.
Lattice invariant_lattice(const GroupAction& a);
Lattice coinvariant_lattice(const GroupAction& a);
struct InvariantSplit {
  Lattice invariant;
  Lattice coinvariant;
};
InvariantSplit invariant_split(const GroupAction& a);

/// The action on a stable sublattice S, in S-coordinates; throws NotStable.
GroupAction restrict_to(const GroupAction& a, const Lattice& s);

/// Whether every generator acts trivially on S^* / S. S must be a stable,
/// nondegenerate sublattice of the acting lattice.
bool disc_action_is_trivial(const GroupAction& a, const Lattice& s);

/// Extends an action on S (S carries its ambient) by the identity on S-perp.
/// Throws NotIntegral when some extension is not integral on the ambient.
GroupAction extend_by_identity(const GroupAction& on_s);

}  // namespace k3lat
