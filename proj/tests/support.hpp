#pragma once

#include <random>
#include <set>

#include "k3lat/enumerate.hpp"
#include "k3lat/lattice.hpp"

namespace testing_support {

using namespace k3lat;

inline IntMatrix gram_of(std::initializer_list<std::initializer_list<long>> rows) { return IntMatrix(rows); }

inline Lattice lat(std::initializer_list<std::initializer_list<long>> rows, std::string name = {}) {
  return make_lattice(IntMatrix(rows), std::move(name));
}

// Cartan matrix of E8, chain 0..6 with node 7 attached to node 4.
inline IntMatrix e8_cartan() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return g;
}

inline IntMatrix negated(IntMatrix g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
  return g;
}

// Random symmetric even matrix with small entries.
inline IntMatrix random_even_gram(std::mt19937_64& rng, std::size_t n, long max_entry) {
  std::uniform_int_distribution<long> off(-max_entry, max_entry);
  std::uniform_int_distribution<long> diag(-max_entry / 2, max_entry / 2);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2 * diag(rng);
    for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
  }
  return g;
}

// Positive definite Gram B B^T from a random integer matrix of full rank.
inline IntMatrix random_positive_gram(std::mt19937_64& rng, std::size_t n, long max_entry) {
  std::uniform_int_distribution<long> d(-max_entry, max_entry);
  for (;;) {
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
    if (determinant(b) != 0) return b * b.transpose();
  }
}

// Every nonzero vector with norm <= bound, one per sign class, by scanning
// the box |x_i| <= sqrt(bound * (G^-1)_ii) that contains all of them.
inline std::set<IntVector> naive_short_vectors(const IntMatrix& g, const Integer& bound) {
  const std::size_t n = g.rows();
  RatMatrix inv = inverse(to_rational(g));
  std::vector<long> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = isqrt(floor(Rational(bound) * inv(i, i))).get_si();
  std::set<IntVector> out;
  std::vector<long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -r[i];
  for (;;) {
    IntVector v(x.begin(), x.end());
    Integer nn = inner(v, g, v);
    if (nn != 0 && nn <= bound) {
      canonical_sign(v);
      out.insert(v);
    }
    std::size_t i = 0;
    while (i < n && x[i] == r[i]) x[i] = -r[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

// l(A) of the discriminant group Z^n / G Z^n as max over p | det of n - rank_p(G).
inline long ell_by_ranks_mod_p(const IntMatrix& g) {
  const std::size_t n = g.rows();
  Integer det = abs(determinant(g));
  long best = 0;
  for (long p = 2; p <= det; ++p) {
    if (det % p != 0) continue;
    bool prime = true;
    for (long q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
    if (!prime) continue;
    std::vector<std::vector<long>> a(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = ((Integer(g(i, j) % p)).get_si() + p) % p;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
      std::size_t piv = r;
      while (piv < n && a[piv][c] == 0) ++piv;
      if (piv == n) continue;
      std::swap(a[piv], a[r]);
      long inv = 1;
      while (a[r][c] * inv % p != 1) ++inv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r || a[i][c] == 0) continue;
        const long f = a[i][c] * inv % p;
        for (std::size_t j = 0; j < n; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
      }
      ++r;
    }
    best = std::max(best, static_cast<long>(n - r));
  }
  return best;
}

}  // namespace testing_support
