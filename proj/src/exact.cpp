#include "k3lat/exact.hpp"

#include <algorithm>
#include <utility>

namespace k3lat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::DependentSpan: return "DependentSpan";
    case ErrorKind::OddLattice: return "OddLattice";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorKind::ComplementNotDefinite: return "ComplementNotDefinite";
    case ErrorKind::NotCodeAutomorphism: return "NotCodeAutomorphism";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotFoundWithinBounds: return "NotFoundWithinBounds";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Matrix

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidInput, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::InvalidInput, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

template <typename T>
void Matrix<T>::set_row(std::size_t i, std::span<const T> values) {
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

template <typename T>
void Matrix<T>::append_row(std::span<const T> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw Error(ErrorKind::InvalidInput, "row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <typename T>
Matrix<T> Matrix<T>::select_rows(std::span<const std::size_t> which) const {
  Matrix out(which.size(), cols_);
  for (std::size_t k = 0; k < which.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(which[k], j);
  return out;
}

template <typename T>
bool Matrix<T>::operator<(const Matrix& other) const {
  if (rows_ != other.rows_) return rows_ < other.rows_;
  if (cols_ != other.cols_) return cols_ < other.cols_;
  return std::lexicographical_compare(data_.begin(), data_.end(), other.data_.begin(), other.data_.end());
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInput, "matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "matrix sum dimension mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "matrix difference dimension mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <typename T>
std::vector<T> operator*(const std::vector<T>& v, const Matrix<T>& m) {
  if (v.size() != m.rows()) throw Error(ErrorKind::InvalidInput, "vector-matrix dimension mismatch");
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

template <typename T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidInput, "hstack row mismatch");
  Matrix<T> c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "vstack column mismatch");
  Matrix<T> c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

template <typename T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

template class Matrix<Integer>;
template class Matrix<Rational>;
template IntMatrix operator*(const IntMatrix&, const IntMatrix&);
template RatMatrix operator*(const RatMatrix&, const RatMatrix&);
template IntMatrix operator+(const IntMatrix&, const IntMatrix&);
template RatMatrix operator+(const RatMatrix&, const RatMatrix&);
template IntMatrix operator-(const IntMatrix&, const IntMatrix&);
template RatMatrix operator-(const RatMatrix&, const RatMatrix&);
template IntMatrix operator*(const Integer&, const IntMatrix&);
template RatMatrix operator*(const Rational&, const RatMatrix&);
template IntVector operator*(const IntVector&, const IntMatrix&);
template RatVector operator*(const RatVector&, const RatMatrix&);
template IntMatrix hstack(const IntMatrix&, const IntMatrix&);
template RatMatrix hstack(const RatMatrix&, const RatMatrix&);
template IntMatrix vstack(const IntMatrix&, const IntMatrix&);
template RatMatrix vstack(const RatMatrix&, const RatMatrix&);
template IntMatrix block_diagonal(const IntMatrix&, const IntMatrix&);
template RatMatrix block_diagonal(const RatMatrix&, const RatMatrix&);

// ---------------------------------------------------------------------------
// Conversions and scalar helpers

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error(ErrorKind::NotIntegral, "matrix entry " + to_string(m(i, j)) + " is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVector to_integer(const RatVector& v) {
  IntVector r;
  r.reserve(v.size());
  for (const auto& q : v) {
    if (q.get_den() != 1) throw Error(ErrorKind::NotIntegral, "vector entry " + to_string(q) + " is not an integer");
    r.push_back(q.get_num());
  }
  return r;
}

IntMatrix clear_row_denominators(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return r;
}

Integer common_denominator(const RatMatrix& m) {
  Integer l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer inner(const IntVector& a, const IntMatrix& gram, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) row += gram(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

Rational inner(const RatVector& a, const RatMatrix& gram, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) row += gram(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool is_symmetric(const RatMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw Error(ErrorKind::Degenerate, "matrix is singular");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }
Integer ceil(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  // When a divides b keep the combination trivial (s = +-1, t = 0) so that
  // elimination never mixes other entries into the pivot row or column.
  if (a != 0 && b % a == 0) {
    r.g = abs(a);
    r.s = a > 0 ? 1 : -1;
    r.t = 0;
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

// Rows (p, i) <- [[s, t], [-b/g, a/g]] * (p, i); determinant one.
void combine_rows(IntMatrix& m, std::size_t p, std::size_t i, const Integer& s, const Integer& t, const Integer& x,
                  const Integer& y) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer rp = s * m(p, j) + t * m(i, j);
    Integer ri = x * m(p, j) + y * m(i, j);
    m(p, j) = std::move(rp);
    m(i, j) = std::move(ri);
  }
}

void combine_cols(IntMatrix& m, std::size_t p, std::size_t i, const Integer& s, const Integer& t, const Integer& x,
                  const Integer& y) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer cp = s * m(r, p) + t * m(r, i);
    Integer ci = x * m(r, p) + y * m(r, i);
    m(r, p) = std::move(cp);
    m(r, i) = std::move(ci);
  }
}

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += f * m(source, j);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

namespace {

HermiteForm hermite(const IntMatrix& m, bool track) {
  HermiteForm out{m, track ? IntMatrix::identity(m.rows()) : IntMatrix(0, 0), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < h.cols() && pr < h.rows(); ++c) {
    // Euclid on the column, smallest entry as pivot: keeps entries small.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = pr; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == h.rows()) break;
      if (best != pr) {
        h.swap_rows(pr, best);
        if (track) u.swap_rows(pr, best);
      }
      bool done = true;
      for (std::size_t i = pr + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(pr, c));
        add_row_multiple(h, i, pr, -q);
        if (track) add_row_multiple(u, i, pr, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pr, c) == 0) continue;
    if (h(pr, c) < 0) {
      negate_row(h, pr);
      if (track) negate_row(u, pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q = floor_div(h(i, c), h(pr, c));
      add_row_multiple(h, i, pr, -q);
      if (track) add_row_multiple(u, i, pr, -q);
    }
    ++pr;
  }
  out.rank = pr;
  return out;
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) { return hermite(m, true); }

std::vector<Integer> SmithForm::invariants() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

SmithForm snf(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    s.swap_rows(t, pi);
    u.swap_rows(t, pi);
    s.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        const Integer a = s(t, t);
        const Integer b = s(i, t);
        auto eg = extended_gcd(a, b);
        Integer x = -b / eg.g;
        Integer y = a / eg.g;
        combine_rows(s, t, i, eg.s, eg.t, x, y);
        combine_rows(u, t, i, eg.s, eg.t, x, y);
        changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        const Integer a = s(t, t);
        const Integer b = s(t, j);
        auto eg = extended_gcd(a, b);
        Integer x = -b / eg.g;
        Integer y = a / eg.g;
        combine_cols(s, t, j, eg.s, eg.t, x, y);
        combine_cols(v, t, j, eg.s, eg.t, x, y);
        changed = true;
      }
      if (changed) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (s(i, j) % s(t, t) != 0) {
            add_row_multiple(s, t, i, 1);
            add_row_multiple(u, t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return out;
}

// Kernel from an LLL reduction of [I | c m]: for c large enough the first
// rows - rank(m) reduced rows have zero tail and span the kernel.
IntMatrix int_kernel(const IntMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t r = rank(m);
  if (r == n) return IntMatrix(0, n);
  if (r == 0) return IntMatrix::identity(n);
  const IntMatrix mmt = m * m.transpose();
  Integer c = Integer(1) << static_cast<unsigned long>(n + 2);
  for (;;) {
    IntMatrix g = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) += c * c * mmt(i, j);
    const IntMatrix t = lll_transform(g);
    IntMatrix k(0, n);
    for (std::size_t i = 0; i < n - r; ++i) k.append_row(t.row(i));
    if (k * m == IntMatrix(k.rows(), m.cols())) {
      for (std::size_t i = 0; i < k.rows(); ++i) {
        std::size_t j = 0;
        while (k(i, j) == 0) ++j;
        if (k(i, j) < 0)
          for (std::size_t l = 0; l < n; ++l) k(i, l) = -k(i, l);
      }
      return k;
    }
    c *= c;
  }
}

IntMatrix row_basis(const IntMatrix& m) {
  auto h = hermite(m, false);
  IntMatrix b(0, m.cols());
  for (std::size_t i = 0; i < h.rank; ++i) b.append_row(h.h.row(i));
  return b;
}

IntMatrix lll_transform(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix t = IntMatrix::identity(n);
  if (n <= 1) return t;
  IntMatrix g = gram;
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> bstar(n);
  const Rational delta(3, 4);
  const Rational half(1, 2);

  auto reduce = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) <= half) return;
    // nearest integer
    Integer q = floor(mu[k][l] + half);
    // b_k -= q b_l
    for (std::size_t j = 0; j < n; ++j) t(k, j) -= q * t(l, j);
    Integer gkk = g(k, k) - 2 * q * g(k, l) + q * q * g(l, l);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      g(k, j) -= q * g(l, j);
      g(j, k) = g(k, j);
    }
    g(k, k) = gkk;
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };

  auto swap = [&](std::size_t k, std::size_t kmax) {
    t.swap_rows(k, k - 1);
    g.swap_rows(k, k - 1);
    g.swap_cols(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    Rational m = mu[k][k - 1];
    Rational bn = bstar[k] + m * m * bstar[k - 1];
    if (bn == 0) throw Error(ErrorKind::NotPositiveDefinite, "LLL on a non positive definite form");
    mu[k][k - 1] = m * bstar[k - 1] / bn;
    bstar[k] = bstar[k - 1] * bstar[k] / bn;
    bstar[k - 1] = bn;
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Rational tt = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * tt;
      mu[i][k - 1] = tt + mu[k][k - 1] * mu[i][k];
    }
  };

  bstar[0] = Rational(g(0, 0));
  if (bstar[0] <= 0) throw Error(ErrorKind::NotPositiveDefinite, "LLL on a non positive definite form");
  std::size_t k = 1, kmax = 0;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j < k; ++j) {
        Rational s = Rational(g(k, j));
        for (std::size_t i = 0; i < j; ++i) s -= mu[j][i] * mu[k][i] * bstar[i];
        mu[k][j] = s / bstar[j];
      }
      Rational s = Rational(g(k, k));
      for (std::size_t j = 0; j < k; ++j) s -= mu[k][j] * mu[k][j] * bstar[j];
      bstar[k] = s;
      if (bstar[k] <= 0) throw Error(ErrorKind::NotPositiveDefinite, "LLL on a non positive definite form");
    }
    reduce(k, k - 1);
    if (bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      swap(k, kmax);
      k = std::max<std::size_t>(1, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return t;
}

Ldlt rat_ldlt(const RatMatrix& g) {
  if (!is_symmetric(g)) throw Error(ErrorKind::InvalidInput, "rat_ldlt needs a symmetric matrix");
  const std::size_t n = g.rows();
  Ldlt out{RatMatrix::identity(n), RatMatrix(n, n)};
  RatMatrix a = g;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) throw Error(ErrorKind::SingularPivot, "leading principal minor " + std::to_string(k + 1) + " vanishes");
    out.d(k, k) = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) out.l(i, k) = a(i, k) / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= out.l(i, k) * a(k, j);
  }
  return out;
}

Signature congruence_signature(const RatMatrix& g) {
  if (!is_symmetric(g)) throw Error(ErrorKind::InvalidInput, "signature needs a symmetric matrix");
  RatMatrix a = g;
  const std::size_t n = a.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // All remaining diagonal entries vanish; pair an off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        sig.zero += n - k;
        break;
      }
      // row/col pi += row/col pj makes the diagonal entry 2*a(pi,pj).
      for (std::size_t j = 0; j < n; ++j) a(pi, j) += a(pj, j);
      for (std::size_t i = 0; i < n; ++i) a(i, pi) += a(i, pj);
      p = pi;
    }
    a.swap_rows(k, p);
    a.swap_cols(k, p);
    const Rational piv = a(k, k);
    if (piv > 0) ++sig.pos; else ++sig.neg;
    // Row operations give the Schur complement below; the matching column
    // operations only clear row k.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t j = k + 1; j < n; ++j) a(k, j) = 0;
  }
  return sig;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      q = Rational(Integer(text));
    } else {
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
      q = Rational(num, den);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + text + "'");
  }
  return q;
}

}  // namespace k3lat
