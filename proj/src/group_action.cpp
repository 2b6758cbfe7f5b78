#include "k3lat/group_action.hpp"

#include <deque>
#include <set>

namespace k3lat {

namespace {

// Solve b * g = m * b for m (b has independent rows), throwing NotStable
// when the image leaves the span or m is not integral.
IntMatrix action_on_rows(const IntMatrix& b, const IntMatrix& g) {
  const std::size_t k = b.rows();
  if (k == 0) return IntMatrix(0, 0);
  RatMatrix rb = to_rational(b);
  RatMatrix gram_b = rb * rb.transpose();
  RatMatrix image = to_rational(b * g);
  // Least squares solve; exact when the image lies in the row span.
  RatMatrix m = image * rb.transpose() * inverse(gram_b);
  if (m * rb != image) throw Error(ErrorKind::NotStable, "sublattice is not stable under the action");
  if (!is_integral(m)) throw Error(ErrorKind::NotStable, "action does not preserve the sublattice integrally");
  return to_integer(m);
}

}  // namespace

void validate(const GroupAction& a) {
  const std::size_t n = a.lattice.rank();
  for (const auto& g : a.generators) {
    if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::InvalidInput, "generator size does not match the lattice");
    if (transform_gram(g, a.lattice.gram) != a.lattice.gram)
      throw Error(ErrorKind::InvalidInput, "generator does not preserve the Gram matrix");
    if (abs(determinant(g)) != 1) throw Error(ErrorKind::InvalidInput, "generator is not invertible over Z");
  }
}

std::vector<IntMatrix> closure(const GroupAction& a, std::uint64_t cap) {
  const IntMatrix id = IntMatrix::identity(a.lattice.rank());
  std::set<IntMatrix> seen{id};
  std::deque<IntMatrix> queue{id};
  while (!queue.empty()) {
    IntMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : a.generators) {
      IntMatrix y = x * g;
      if (seen.contains(y)) continue;
      if (seen.size() >= cap) throw Error(ErrorKind::ResourceCap, "group order exceeds the closure cap");
      seen.insert(y);
      queue.push_back(std::move(y));
    }
  }
  return {seen.begin(), seen.end()};
}

InvariantSplit invariant_split(const GroupAction& a) {
  auto amb = std::make_shared<const Lattice>(a.lattice);
  const std::size_t n = a.lattice.rank();
  IntMatrix fixed = IntMatrix::identity(n);
  if (!a.generators.empty()) {
    IntMatrix stacked(n, 0);
    const IntMatrix id = IntMatrix::identity(n);
    for (const auto& g : a.generators) stacked = hstack(stacked, g - id);
    fixed = int_kernel(stacked);
  }
  Lattice inv = sublattice(amb, fixed, "invariant");
  Lattice co = orth_complement(inv);
  co.name = "coinvariant";
  return {std::move(inv), std::move(co)};
}

Lattice invariant_lattice(const GroupAction& a) { return invariant_split(a).invariant; }
Lattice coinvariant_lattice(const GroupAction& a) { return invariant_split(a).coinvariant; }

GroupAction restrict_to(const GroupAction& a, const Lattice& s) {
  IntMatrix b = integral_basis(s);
  if (b.cols() != a.lattice.rank()) throw Error(ErrorKind::InvalidInput, "sublattice does not live in the acting lattice");
  GroupAction r{s, {}};
  for (const auto& g : a.generators) r.generators.push_back(action_on_rows(b, g));
  return r;
}

bool disc_action_is_trivial(const GroupAction& a, const Lattice& s) {
  if (!s.is_nondegenerate()) throw Error(ErrorKind::Degenerate, "discriminant action needs a nondegenerate sublattice");
  GroupAction r = restrict_to(a, s);
  if (s.rank() == 0) return true;
  RatMatrix dual = dual_basis(s);
  for (const auto& g : r.generators) {
    RatMatrix moved = dual * to_rational(g) - dual;
    if (!is_integral(moved)) return false;
  }
  return true;
}

GroupAction extend_by_identity(const GroupAction& on_s) {
  const Lattice& s = on_s.lattice;
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "extension needs a sublattice with an ambient");
  const Lattice& amb = *s.ambient;
  Lattice perp = orth_complement(s);
  if (s.rank() + perp.rank() != amb.rank() || !s.is_nondegenerate())
    throw Error(ErrorKind::Degenerate, "sublattice and its complement must be nondegenerate");
  RatMatrix basis = vstack(*s.basis, *perp.basis);
  RatMatrix basis_inv = inverse(basis);
  GroupAction out{amb, {}};
  for (const auto& g : on_s.generators) {
    RatMatrix block = block_diagonal(to_rational(g), RatMatrix::identity(perp.rank()));
    RatMatrix ext = basis_inv * block * basis;
    if (!is_integral(ext)) throw Error(ErrorKind::NotIntegral, "extension by the identity is not integral");
    IntMatrix e = to_integer(ext);
    if (transform_gram(e, amb.gram) != amb.gram)
      throw Error(ErrorKind::NotIntegral, "extension by the identity does not preserve the form");
    out.generators.push_back(std::move(e));
  }
  return out;
}

}  // namespace k3lat
