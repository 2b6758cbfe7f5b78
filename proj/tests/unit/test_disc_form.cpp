#include <random>

#include "doctest.h"
#include "k3lat/disc_form.hpp"
#include "support.hpp"

using namespace k3lat;
using testing_support::gram_of;
using testing_support::lat;

namespace {

FiniteQuadraticForm a1_form(long q_num, long q_den) {
  RatMatrix q(1, 1);
  q(0, 0) = Rational(q_num, q_den);
  q(0, 0).canonicalize();
  return make_form({Integer(2)}, q);
}

// Signature mod 8 read directly from the Gram matrix.
int lattice_signature_mod8(const Lattice& l) {
  auto s = signature(l);
  return static_cast<int>(((static_cast<long>(s.pos) - static_cast<long>(s.neg)) % 8 + 8) % 8);
}

}  // namespace

TEST_CASE("discriminant forms of small lattices") {
  CHECK(disc_form(lat({{0, 1}, {1, 0}})).factors.empty());
  auto a1 = disc_form(lat({{-2}}));
  CHECK(a1.factors == std::vector<Integer>{2});
  CHECK(a1.q(0, 0) == Rational(3, 2));
  auto a2 = disc_form(lat({{-2, -1}, {-1, -2}}));
  CHECK(a2.factors == std::vector<Integer>{3});
  CHECK(a2.q(0, 0) == Rational(4, 3));
  CHECK(disc_form(lat({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}})).factors == std::vector<Integer>{4});
}

TEST_CASE("discriminant form errors") {
  try {
    disc_form(lat({{1}}));
    FAIL("expected OddLattice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddLattice);
  }
  try {
    disc_form(lat({{2, 2}, {2, 2}}));
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
}

TEST_CASE("ell counts invariant factors") {
  FiniteQuadraticForm trivial;
  CHECK(ell(trivial) == 0);
  auto cube = disc_form(lat({{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}}));
  CHECK(ell(cube) == 3);
  CHECK(ell_p(cube, Integer(2)) == 3);
  CHECK(ell_p(cube, Integer(3)) == 0);
  // Z/12 + Z/2 from diag(-2, -12) after its own reduction: A1(-1) + <-12>.
  auto mixed = disc_form(lat({{-2, 0}, {0, -12}}));
  CHECK(mixed.factors == std::vector<Integer>{2, 12});
  CHECK(ell(mixed) == 2);
  CHECK(ell_p(mixed, Integer(2)) == 2);
  CHECK(ell_p(mixed, Integer(3)) == 1);
}

TEST_CASE("signature mod 8 of basic forms") {
  CHECK(signature_mod8(a1_form(3, 2)) == 7);
  CHECK(signature_mod8(a1_form(1, 2)) == 1);
  CHECK(signature_mod8(FiniteQuadraticForm{}) == 0);
  RatMatrix degenerate(1, 1);
  degenerate(0, 0) = 0;
  try {
    signature_mod8(make_form({Integer(2)}, degenerate));
    FAIL("expected DegenerateForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateForm);
  }
  try {
    signature_mod8(disc_form(lat({{-2, 0}, {0, -2}})), 3);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("negation") {
  CHECK(negate(a1_form(3, 2)) == a1_form(1, 2));
  CHECK(negate(FiniteQuadraticForm{}) == FiniteQuadraticForm{});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix g = testing_support::random_even_gram(rng, 1 + trial % 4, 6);
    if (determinant(g) == 0) continue;
    auto a = disc_form(make_lattice(g));
    CHECK(negate(negate(a)) == a);
    CHECK(disc_form(rescale(make_lattice(g), -1)) == negate(a));
  }
}

TEST_CASE("splitting off the A1 form") {
  CHECK(splits_off_a1(disc_form(lat({{-2}}))));
  CHECK(!splits_off_a1(FiniteQuadraticForm{}));
  CHECK(splits_off_a1(disc_form(lat({{-2, 0, 0}, {0, -2, -1}, {0, -1, -2}}))));
  CHECK(!splits_off_a1(disc_form(lat({{2}}))));
  CHECK(splits_off_a1(disc_form(lat({{2}})), A1Sign::Positive));
  // D4 has discriminant (Z/2)^2 with all nonzero q = 1 (mod 2): no A1 summand.
  auto d4 = lat({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  CHECK(!splits_off_a1(disc_form(d4)));
  CHECK(!splits_off_a1(disc_form(d4), A1Sign::Positive));
}

TEST_CASE("small form isometry") {
  auto a3 = disc_form(lat({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}));
  CHECK(iso_form_small(a3, a3));
  CHECK(!iso_form_small(a1_form(3, 2), a1_form(1, 2)));
  // A root of E8(-1) + U and its complement.
  auto amb = std::make_shared<Lattice>(
      direct_sum(make_lattice(testing_support::negated(testing_support::e8_cartan())), lat({{0, 1}, {1, 0}})));
  IntMatrix v(1, 10);
  v(0, 0) = 1;
  auto s = sublattice(amb, v);
  auto c = orth_complement(s);
  CHECK(iso_form_small(disc_form(s), negate(disc_form(c))));
  // Same group, different forms: <2> + <2> versus <-2> + <2>.
  CHECK(!iso_form_small(disc_form(lat({{2, 0}, {0, 2}})), disc_form(lat({{-2, 0}, {0, 2}}))));
  // Different generators for the same form: <6> and <-6>... q(g) = 1/6 vs 5/6 differ.
  CHECK(!iso_form_small(disc_form(lat({{6}})), disc_form(lat({{-6}}))));
  // <6> versus <2*... an equivalent presentation: x -> 5x maps 1/6 to 25/6 = 1/6 mod 2.
  RatMatrix q(1, 1);
  q(0, 0) = Rational(25, 6);
  q(0, 0).canonicalize();
  CHECK(iso_form_small(disc_form(lat({{6}})), make_form({Integer(6)}, q)));
}

TEST_CASE("Milgram formula on random even lattices") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 150) {
    IntMatrix g = testing_support::random_even_gram(rng, 1 + tested % 6, 8);
    Integer det = determinant(g);
    if (det == 0 || abs(det) > 10000) continue;
    auto l = make_lattice(g);
    auto a = disc_form(l);
    CHECK(a.order() == abs(det));
    CHECK(ell(a) <= l.rank());
    CHECK(signature_mod8(a) == lattice_signature_mod8(l));
    ++tested;
  }
}
