#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "k3lat/error.hpp"

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix over an exact scalar type. Vectors are rows and maps
// act on the right (v -> v * M) everywhere in the library.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  void set_row(std::size_t i, std::span<const T> values);
  void append_row(std::span<const T> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> which) const;

  bool operator==(const Matrix& other) const = default;
  bool operator<(const Matrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& a);
template <typename T>
std::vector<T> operator*(const std::vector<T>& v, const Matrix<T>& m);

// Block helpers.
template <typename T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
bool is_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
IntMatrix to_integer(const RatMatrix& m);  // throws NotIntegral if any entry is fractional
IntVector to_integer(const RatVector& v);

/// Multiplies each row by the lcm of its denominators; rows keep their direction.
IntMatrix clear_row_denominators(const RatMatrix& m);
Integer common_denominator(const RatMatrix& m);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);
/// (a, b) under the bilinear form `gram`: a * gram * b^T.
Integer inner(const IntVector& a, const IntMatrix& gram, const IntVector& b);
Rational inner(const RatVector& a, const RatMatrix& gram, const RatVector& b);

Integer content(std::span<const Integer> v);  // nonnegative gcd of the entries
bool is_symmetric(const IntMatrix& m);
bool is_symmetric(const RatMatrix& m);

Integer determinant(const IntMatrix& m);  // Bareiss, exact
Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
/// Exact inverse; throws Degenerate when singular.
RatMatrix inverse(const RatMatrix& m);

Integer isqrt(const Integer& n);  // floor(sqrt(n)), n >= 0
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

struct ExtendedGcd {
  Integer g, s, t;  // s*a + t*b = g >= 0
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

struct HermiteForm {
  IntMatrix h;  // row echelon, positive pivots, entries above a pivot in [0, pivot)
  IntMatrix u;  // unimodular, u * m == h
  std::size_t rank = 0;
};
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix s;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix u;  // unimodular, u * m * v == s
  IntMatrix v;  // unimodular
  std::vector<Integer> invariants() const;  // the diagonal, including zeros
};
SmithForm snf(const IntMatrix& m);

/// Unimodular T with T * gram * T^T LLL-reduced (delta = 3/4). Positive
/// definite input only.
IntMatrix lll_transform(const IntMatrix& gram);

/// Saturated basis of {x in Z^rows : x * m == 0}, LLL-reduced, each row with
/// first nonzero entry positive.
IntMatrix int_kernel(const IntMatrix& m);

/// HNF basis of the row span; zero rows dropped.
IntMatrix row_basis(const IntMatrix& m);

struct Ldlt {
  RatMatrix l;  // unit lower triangular
  RatMatrix d;  // diagonal
};
/// g == l * d * l^T; throws SingularPivot on a vanishing leading minor.
Ldlt rat_ldlt(const RatMatrix& g);

struct Signature {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t zero = 0;
  bool operator==(const Signature&) const = default;
};
/// Sylvester signature via symmetric congruence diagonalization; handles
/// zero pivots by pairing rows.
Signature congruence_signature(const RatMatrix& g);

/// Serialization of scalars: integers as decimal, rationals as "p/q" or "p".
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace k3lat
