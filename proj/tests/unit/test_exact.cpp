#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace k3lat;
using testing_support::gram_of;

namespace {
bool is_unimodular(const IntMatrix& u) { return abs(determinant(u)) == 1; }
}  // namespace

TEST_CASE("hnf reference inputs") {
  CHECK(hnf(gram_of({{0, 1}, {1, 0}})).h == gram_of({{1, 0}, {0, 1}}));
  CHECK(hnf(gram_of({{2, 4}, {0, 6}})).h == gram_of({{2, 4}, {0, 6}}));
  auto f = hnf(gram_of({{2, 0}, {3, 0}}));
  CHECK(f.h == gram_of({{1, 0}, {0, 0}}));
  CHECK(f.rank == 1);
  CHECK(f.u * gram_of({{2, 0}, {3, 0}}) == f.h);
}

TEST_CASE("snf reference inputs") {
  CHECK(snf(gram_of({{2, 0}, {0, 4}})).s == gram_of({{2, 0}, {0, 4}}));
  CHECK(snf(gram_of({{0, 1}, {1, 0}})).s == gram_of({{1, 0}, {0, 1}}));
  IntMatrix a3 = gram_of({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  auto f = snf(a3);
  CHECK(f.s == gram_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 4}}));
  CHECK(f.u * a3 * f.v == f.s);
}

TEST_CASE("hnf and snf transforms are unimodular on random input") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    auto h = hnf(m);
    REQUIRE(h.u * m == h.h);
    REQUIRE(is_unimodular(h.u));
    CHECK(h.rank == rank(m));
    auto s = snf(m);
    REQUIRE(s.u * m * s.v == s.s);
    REQUIRE(is_unimodular(s.u));
    REQUIRE(is_unimodular(s.v));
    auto inv = s.invariants();
    for (std::size_t i = 0; i < inv.size(); ++i) {
      CHECK(inv[i] >= 0);
      for (std::size_t j = 0; j < s.s.cols(); ++j)
        if (j != i) CHECK(s.s(i, j) == 0);
      if (i + 1 < inv.size() && inv[i] != 0) CHECK(inv[i + 1] % inv[i] == 0);
      if (i + 1 < inv.size() && inv[i] == 0) CHECK(inv[i + 1] == 0);
    }
  }
}

TEST_CASE("int_kernel") {
  CHECK(int_kernel(IntMatrix::identity(2)).rows() == 0);
  CHECK(int_kernel(IntMatrix(2, 2)) == IntMatrix::identity(2));
  // x * [[1],[-1]] = 0 means x0 = x1.
  CHECK(int_kernel(gram_of({{1, -1}}).transpose()) == gram_of({{1, 1}}));
}

TEST_CASE("rat_ldlt") {
  auto f = rat_ldlt(to_rational(gram_of({{2, 0}, {0, 2}})));
  CHECK(f.l == RatMatrix::identity(2));
  CHECK(f.d == to_rational(gram_of({{2, 0}, {0, 2}})));
  auto g = rat_ldlt(to_rational(gram_of({{2, 1}, {1, 2}})));
  CHECK(g.l(1, 0) == Rational(1, 2));
  CHECK(g.d(1, 1) == Rational(3, 2));
  CHECK(g.d(0, 0) == 2);
  try {
    rat_ldlt(to_rational(gram_of({{0, 1}, {1, 0}})));
    FAIL("expected SingularPivot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularPivot);
  }
}

TEST_CASE("congruence signature and determinant agree with diagonalization") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix g = testing_support::random_even_gram(rng, 1 + trial % 6, 6);
    auto sig = congruence_signature(to_rational(g));
    CHECK(sig.pos + sig.neg + sig.zero == g.rows());
    CHECK(sig.pos + sig.neg == rank(g));
    Integer det = determinant(g);
    CHECK(Rational(det) == determinant(to_rational(g)));
    if (det != 0) CHECK(((det < 0) == (sig.neg % 2 == 1)));
  }
}

TEST_CASE("isqrt and rational floor") {
  CHECK(isqrt(Integer(0)) == 0);
  CHECK(isqrt(Integer(15)) == 3);
  CHECK(isqrt(Integer(16)) == 4);
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(ceil_div(Integer(7), Integer(2)) == 4);
}

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("-7/14") == Rational(-1, 2));
  CHECK(parse_rational("12") == 12);
}
