#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "k3lat/exact.hpp"

namespace k3lat {

/// An integral lattice given by its Gram matrix. Sublattices additionally carry
/// their basis in the coordinates of an ambient lattice; abstract lattices have
/// neither basis nor ambient.
struct Lattice {
  IntMatrix gram;
  std::optional<RatMatrix> basis;
  std::shared_ptr<const Lattice> ambient;
  std::string name;

  std::size_t rank() const { return gram.rows(); }
  bool has_ambient() const { return ambient != nullptr && basis.has_value(); }
  bool is_even() const;
  bool is_nondegenerate() const { return det() != 0; }
  Integer det() const { return determinant(gram); }
};

Lattice make_lattice(IntMatrix gram, std::string name = {});

/// Checks symmetry and, for sublattices, gram == basis * ambient.gram * basis^T
/// with independent basis rows. Throws InvalidInput on violation.
void validate(const Lattice& l);

/// Basis rows in ambient coordinates; throws NotIntegral for rational bases.
IntMatrix integral_basis(const Lattice& s);

Signature signature(const Lattice& l);
bool is_positive_definite(const Lattice& l);
bool is_negative_definite(const Lattice& l);

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice rescale(const Lattice& l, long factor);
/// Rows are the dual basis vectors in L-coordinates (gram^-1).
RatMatrix dual_basis(const Lattice& l);

/// Lattice spanned by the rows of `vecs` (ambient coordinates), HNF basis.
Lattice sublattice(std::shared_ptr<const Lattice> ambient, const IntMatrix& vecs, std::string name = {});
Lattice sublattice(const Lattice& ambient, const IntMatrix& vecs, std::string name = {});

/// (S (x) Q) intersected with the ambient lattice.
Lattice saturation(const Lattice& s);
bool is_primitive_sublattice(const Lattice& s);
/// Index [S^sat : S].
Integer saturation_index(const Lattice& s);

/// {x in ambient : (x, s) = 0 for all s in S}, saturated by construction.
Lattice orth_complement(const Lattice& s);

bool is_primitive_vector(const IntVector& v, const Lattice& l);
bool is_primitive_in_dual(const IntVector& v, const Lattice& l);

struct Split {
  RatVector in_span;        // in S (x) Q
  RatVector in_complement;  // in S-perp (x) Q
};
/// Orthogonal decomposition of an ambient-coordinate vector along S and S-perp.
Split split_decompose(const RatVector& v, const Lattice& s);

/// Subspace of ambient (x) Q spanned by the rows of `spanning`.
struct RationalSubspace {
  std::shared_ptr<const Lattice> ambient;
  RatMatrix spanning;

  std::size_t dim() const { return spanning.rows(); }
};

RatMatrix restricted_gram(const RationalSubspace& p);
bool is_positive_subspace(const RationalSubspace& p);
/// The saturated integral lattice P-perp in the ambient.
Lattice complement_lattice(const RationalSubspace& p);
/// The saturated integral lattice (P (x) Q) intersected with the ambient.
Lattice lattice_in_subspace(const RationalSubspace& p);

/// A short vector of positive square in the integral span of `rows` under
/// `gram`, or nullopt when the span is negative semidefinite.
std::optional<IntVector> positive_vector_in_span(const IntMatrix& rows, const IntMatrix& gram);

/// Maps coordinates in S to ambient coordinates.
RatVector to_ambient(const Lattice& s, const RatVector& coords);
IntVector to_ambient(const Lattice& s, const IntVector& coords);

/// Coordinates of an ambient vector lying in S (x) Q with respect to S's basis.
RatVector coordinates_in(const Lattice& s, const RatVector& v);

/// The lattice w-perp / Z w for a primitive isotropic w (ambient coordinates of l).
Lattice isotropic_quotient(const Lattice& l, const IntVector& w);

/// Gram of the action matrix g acting on the right: g * gram * g^T.
IntMatrix transform_gram(const IntMatrix& g, const IntMatrix& gram);

}  // namespace k3lat
