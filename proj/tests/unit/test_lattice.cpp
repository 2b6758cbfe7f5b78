#include "doctest.h"
#include "support.hpp"

using namespace k3lat;
using testing_support::gram_of;
using testing_support::lat;

namespace {
Lattice a1neg2() { return lat({{-2, 0}, {0, -2}}); }
Lattice hyperbolic() { return lat({{0, 1}, {1, 0}}); }
Lattice e8neg() { return make_lattice(testing_support::negated(testing_support::e8_cartan())); }
}  // namespace

TEST_CASE("signatures") {
  CHECK(signature(hyperbolic()) == Signature{1, 1, 0});
  CHECK(signature(e8neg()) == Signature{0, 8, 0});
  CHECK(signature(direct_sum(hyperbolic(), hyperbolic())) == Signature{2, 2, 0});
  CHECK(e8neg().det() == 1);
}

TEST_CASE("rescale and dual basis") {
  CHECK(rescale(lat({{2}}), -1).gram == gram_of({{-2}}));
  CHECK(dual_basis(lat({{-2}})) == RatMatrix::from_rows({{Rational(-1, 2)}}, 1));
}

TEST_CASE("sublattices") {
  CHECK(sublattice(a1neg2(), gram_of({{1, 1}})).gram == gram_of({{-4}}));
  CHECK(sublattice(a1neg2(), IntMatrix::identity(2)).gram == a1neg2().gram);
  auto iso = sublattice(hyperbolic(), gram_of({{2, 0}}));
  CHECK(iso.rank() == 1);
  CHECK(iso.gram == gram_of({{0}}));
}

TEST_CASE("saturation") {
  auto s = saturation(sublattice(hyperbolic(), gram_of({{2, 0}})));
  CHECK(integral_basis(s) == gram_of({{1, 0}}));
  auto t = sublattice(a1neg2(), gram_of({{1, 1}, {1, -1}}));
  CHECK(saturation_index(t) == 2);
  CHECK(!is_primitive_sublattice(t));
  CHECK(integral_basis(saturation(t)) == IntMatrix::identity(2));
  auto full = sublattice(a1neg2(), IntMatrix::identity(2));
  CHECK(integral_basis(saturation(full)) == IntMatrix::identity(2));
}

TEST_CASE("orthogonal complements") {
  auto root = sublattice(e8neg(), gram_of({{1, 0, 0, 0, 0, 0, 0, 0}}));
  auto c = orth_complement(root);
  CHECK(c.rank() == 7);
  CHECK(abs(c.det()) == 2);
  auto diag = sublattice(a1neg2(), gram_of({{1, 1}}));
  auto anti = orth_complement(diag);
  CHECK(anti.gram == gram_of({{-4}}));
  IntMatrix b = integral_basis(anti);
  CHECK(abs(b(0, 0)) == 1);
  CHECK(b(0, 0) == -b(0, 1));
}

TEST_CASE("primitivity in lattice and dual") {
  auto a1 = lat({{-2}});
  CHECK(is_primitive_vector({Integer(1)}, a1));
  CHECK(!is_primitive_in_dual({Integer(1)}, a1));
  CHECK(is_primitive_in_dual({Integer(1), Integer(0)}, hyperbolic()));
  auto a3 = lat({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  CHECK(is_primitive_in_dual({Integer(1), Integer(1), Integer(0)}, a3));
  CHECK(!is_primitive_vector({Integer(2), Integer(4), Integer(0)}, a3));
}

TEST_CASE("split_decompose") {
  auto amb = std::make_shared<Lattice>(a1neg2());
  auto diag = sublattice(amb, gram_of({{1, 1}}));
  auto sp = split_decompose({Rational(1), Rational(0)}, diag);
  CHECK(sp.in_span == RatVector{Rational(1, 2), Rational(1, 2)});
  CHECK(sp.in_complement == RatVector{Rational(1, 2), Rational(-1, 2)});
  auto inside = split_decompose({Rational(3), Rational(3)}, diag);
  CHECK(inside.in_complement == RatVector{Rational(0), Rational(0)});
  auto outside = split_decompose({Rational(1), Rational(-1)}, diag);
  CHECK(outside.in_span == RatVector{Rational(0), Rational(0)});
}

TEST_CASE("rational subspaces") {
  auto e8 = std::make_shared<Lattice>(e8neg());
  RationalSubspace p{e8, to_rational(gram_of({{1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0}}))};
  CHECK(!is_positive_subspace(p));
  auto u = std::make_shared<Lattice>(hyperbolic());
  CHECK(!is_positive_subspace({u, RatMatrix::identity(2)}));
  CHECK(is_positive_subspace({u, to_rational(gram_of({{1, 1}}))}));
  try {
    restricted_gram({u, to_rational(gram_of({{1, 1}, {2, 2}}))});
    FAIL("expected DependentSpan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DependentSpan);
  }
  auto c = complement_lattice({u, to_rational(gram_of({{1, 1}}))});
  CHECK(c.gram == gram_of({{-2}}));
}

TEST_CASE("lll transform is unimodular and preserves the form class") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix g = testing_support::random_positive_gram(rng, 1 + trial % 6, 5);
    IntMatrix t = lll_transform(g);
    CHECK(abs(determinant(t)) == 1);
    IntMatrix r = transform_gram(t, g);
    CHECK(determinant(r) == determinant(g));
  }
}

TEST_CASE("isotropic quotient of a hyperbolic summand") {
  auto l = direct_sum(e8neg(), hyperbolic());
  IntVector w(10, Integer(0));
  w[8] = 1;
  auto q = isotropic_quotient(l, w);
  CHECK(q.rank() == 8);
  CHECK(abs(q.det()) == 1);
  CHECK(q.is_even());
  CHECK(signature(q) == Signature{0, 8, 0});
}
