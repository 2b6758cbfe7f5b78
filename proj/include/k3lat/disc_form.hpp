#pragma once

#include <cstdint>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// A finite abelian group (+) Z/d_i with d_1 | d_2 | ... | d_k, each d_i > 1,
/// carrying q(x) = x Q x^T mod 2Z and b(x, y) = x Q y^T mod Z. Diagonal
/// entries of Q are kept in [0, 2), off-diagonal entries in [0, 1).
struct FiniteQuadraticForm {
  std::vector<Integer> factors;
  RatMatrix q;

  Integer order() const;
  bool operator==(const FiniteQuadraticForm&) const = default;
};

/// Reduces Q to canonical representatives and checks well-definedness.
FiniteQuadraticForm make_form(std::vector<Integer> factors, RatMatrix q);

/// Discriminant form of an even nondegenerate lattice, generators read off the
/// Smith normal form of the Gram matrix.
FiniteQuadraticForm disc_form(const Lattice& l);

std::size_t ell(const FiniteQuadraticForm& a);
std::size_t ell_p(const FiniteQuadraticForm& a, const Integer& p);
/// Primes dividing |A|, ascending.
std::vector<Integer> primes_dividing(const FiniteQuadraticForm& a);

/// The p-primary part in invariant-factor presentation.
FiniteQuadraticForm p_part(const FiniteQuadraticForm& a, const Integer& p);

FiniteQuadraticForm negate(const FiniteQuadraticForm& a);

Rational q_value(const FiniteQuadraticForm& a, const IntVector& x);
Rational b_value(const FiniteQuadraticForm& a, const IntVector& x, const IntVector& y);

struct GaussSum {
  double re = 0;
  double im = 0;
  double modulus = 0;
  int residue = 0;  // sum = sqrt|A| * exp(2 pi i residue / 8)
};

inline constexpr std::uint64_t kGaussSumCap = 1'000'000;
inline constexpr std::uint64_t kSplitCap = 1u << 16;
inline constexpr std::uint64_t kIsoCap = 4096;

/// Sum over A of exp(pi i q(a)); throws TooLarge above `cap` elements and
/// DegenerateForm when the modulus is not sqrt|A| within 1e-6 sqrt|A|.
GaussSum gauss_sum(const FiniteQuadraticForm& a, std::uint64_t cap = kGaussSumCap);
int signature_mod8(const FiniteQuadraticForm& a, std::uint64_t cap = kGaussSumCap);

/// Which A1 form is split off: A1(-1) has q = 3/2, A1 has q = 1/2.
enum class A1Sign { Negative, Positive };

/// True iff some a of order 2 in the 2-part has q(a) equal to the A1 value
/// and A_2 = <a> (+) a-perp. Brute force over the 2-part.
bool splits_off_a1(const FiniteQuadraticForm& a, A1Sign sign = A1Sign::Negative, std::uint64_t cap = kSplitCap);

/// Brute-force isometry test of small forms.
bool iso_form_small(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, std::uint64_t cap = kIsoCap);

}  // namespace k3lat
