#include "k3lat/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "k3lat/parallel.hpp"

namespace k3lat {

namespace {

using i128 = __int128;

// Scalar helpers so the kernel can run on __int128 or on GMP integers.
i128 isqrt_of(i128 n) {
  if (n <= 0) return 0;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}
Integer isqrt_of(const Integer& n) { return n <= 0 ? Integer(0) : isqrt(n); }

i128 floor_div_of(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
i128 ceil_div_of(i128 a, i128 b) { return -floor_div_of(-a, b); }
Integer floor_div_of(const Integer& a, const Integer& b) { return floor_div(a, b); }
Integer ceil_div_of(const Integer& a, const Integer& b) { return ceil_div(a, b); }

i128 from_integer(const Integer& z, i128*) {
  // Two 64-bit halves; callers guarantee |z| < 2^126.
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned long long h = hi.get_ui();
  unsigned long long l = 0;
  mpz_export(&l, nullptr, -1, sizeof l, 0, 0, lo.get_mpz_t());
  i128 v = (static_cast<i128>(h) << 64) | l;
  return z < 0 ? -v : v;
}
Integer from_integer(const Integer& z, Integer*) { return z; }

Integer to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer z = Integer(static_cast<unsigned long>(u >> 64));
  z <<= 64;
  z += Integer(static_cast<unsigned long>(u & ~0ULL));
  return neg ? Integer(-z) : z;
}

long to_long(i128 v) { return static_cast<long>(v); }
long to_long(const Integer& v) { return v.get_si(); }

// Exact integer form of the LDL^T data: m[k] is the k-th leading minor and
// a[j][i] = L_ji * m[i+1], integral as a minor of the Gram matrix.
struct Triangular {
  std::vector<Integer> m;
  std::vector<std::vector<Integer>> a;
};

Triangular triangular_data(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  Ldlt f = rat_ldlt(to_rational(gram));
  Triangular t;
  t.m.assign(n + 1, Integer(1));
  Rational prod = 1;
  for (std::size_t k = 0; k < n; ++k) {
    prod *= f.d(k, k);
    t.m[k + 1] = to_integer(RatVector{prod})[0];
  }
  t.a.assign(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t.a[j][i] = to_integer(RatVector{f.l(j, i) * Rational(t.m[i + 1])})[0];
  return t;
}

template <typename T>
class FinckePohst {
 public:
  FinckePohst(const Triangular& tri, const Integer& bound) : n_(tri.m.size() - 1) {
    for (const auto& v : tri.m) m_.push_back(from_integer(v, static_cast<T*>(nullptr)));
    a_.assign(n_, std::vector<T>(n_, T(0)));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) a_[j][i] = from_integer(tri.a[j][i], static_cast<T*>(nullptr));
    bound_ = from_integer(bound, static_cast<T*>(nullptr));
  }

  // Admissible range of the last coordinate.
  std::pair<long, long> top_range() const {
    T r = m_[n_ - 1] * (bound_ * m_[n_]);
    T s = isqrt_of(r);
    return {to_long(ceil_div_of(T(-s), m_[n_])), to_long(floor_div_of(s, m_[n_]))};
  }

  // Enumerates the subtree below x[n-1] = top, keeping one vector per sign class.
  void run(long top, std::vector<std::pair<std::vector<long>, T>>& out, std::atomic<std::uint64_t>& nodes,
           std::uint64_t cap) {
    std::vector<long> x(n_, 0);
    std::vector<T> partial(n_ + 1, T(0));
    x[n_ - 1] = top;
    T t = m_[n_] * T(top);
    partial[n_ - 1] = (partial[n_] * m_[n_ - 1] + t * t) / m_[n_];
    descend(n_ - 1, x, partial, top != 0, out, nodes, cap);
  }

 private:
  void descend(std::size_t level, std::vector<long>& x, std::vector<T>& partial, bool nonzero_above,
               std::vector<std::pair<std::vector<long>, T>>& out, std::atomic<std::uint64_t>& nodes,
               std::uint64_t cap) {
    if (++nodes > cap) throw Error(ErrorKind::ResourceCap, "short vector enumeration exceeded the node budget");
    if (level == 0) {
      if (nonzero_above) out.emplace_back(x, partial[0]);
      return;
    }
    const std::size_t k = level - 1;
    T shift(0);
    for (std::size_t j = k + 1; j < n_; ++j)
      if (x[j] != 0) shift += a_[j][k] * T(x[j]);
    T r = m_[k] * (bound_ * m_[k + 1] - partial[k + 1]);
    if (r < 0) return;
    T s = isqrt_of(r);
    long lo = to_long(ceil_div_of(T(-s - shift), m_[k + 1]));
    long hi = to_long(floor_div_of(T(s - shift), m_[k + 1]));
    if (!nonzero_above) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      x[k] = v;
      T t = m_[k + 1] * T(v) + shift;
      partial[k] = (partial[k + 1] * m_[k] + t * t) / m_[k + 1];
      descend(k, x, partial, nonzero_above || v != 0, out, nodes, cap);
    }
    x[k] = 0;
  }

  std::size_t n_;
  std::vector<T> m_;
  std::vector<std::vector<T>> a_;
  T bound_;
};

template <typename T>
using Found = std::vector<std::pair<std::vector<long>, T>>;

// Norms partial[0] are scaled by m_0 = 1, so they are the exact norms.
template <typename T>
Found<T> enumerate_reduced(const Triangular& tri, const Integer& bound, std::uint64_t cap) {
  FinckePohst<T> fp(tri, bound);
  auto [lo, hi] = fp.top_range();
  lo = std::max(lo, 0L);
  std::vector<long> tops;
  for (long v = lo; v <= hi; ++v) tops.push_back(v);
  std::vector<std::vector<std::pair<std::vector<long>, T>>> parts(tops.size());
  std::atomic<std::uint64_t> nodes{0};
  parallel_for(tops.size(), [&](std::size_t i) {
    FinckePohst<T> local = fp;
    local.run(tops[i], parts[i], nodes, cap);
  });
  Found<T> out;
  for (auto& part : parts)
    for (auto& e : part) out.push_back(std::move(e));
  return out;
}

Integer norm_of(const Integer& n) { return n; }
Integer norm_of(i128 n) { return to_mpz(n); }

void flip_to_canonical(std::vector<long>& v) {
  for (long c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& e : v) e = -e;
    return;
  }
}

// Back to the original basis: machine integers when every coordinate fits,
// GMP otherwise.
template <typename T>
std::vector<ShortVector> to_original_basis(Found<T> found, const IntMatrix& t) {
  const std::size_t n = t.rows();
  long max_x = 0;
  for (const auto& [x, norm] : found)
    for (long c : x) max_x = std::max(max_x, std::abs(c));
  Integer max_t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) max_t = std::max(max_t, Integer(abs(t(i, j))));
  std::vector<ShortVector> out;
  out.reserve(found.size());
  if (max_t * max_x * n < Integer(1) << 62) {
    std::vector<std::vector<long>> tl(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tl[i][j] = t(i, j).get_si();
    std::vector<std::pair<std::vector<long>, std::size_t>> rows;
    rows.reserve(found.size());
    for (std::size_t f = 0; f < found.size(); ++f) {
      std::vector<long> v(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (long c = found[f].first[i])
          for (std::size_t j = 0; j < n; ++j) v[j] += c * tl[i][j];
      flip_to_canonical(v);
      rows.emplace_back(std::move(v), f);
    }
    std::sort(rows.begin(), rows.end());
    for (auto& [v, f] : rows) {
      ShortVector sv;
      sv.v.assign(v.begin(), v.end());
      sv.norm = norm_of(found[f].second);
      out.push_back(std::move(sv));
    }
    return out;
  }
  for (auto& [x, norm] : found) {
    ShortVector sv;
    sv.v.assign(x.begin(), x.end());
    sv.v = sv.v * t;
    canonical_sign(sv.v);
    sv.norm = norm_of(norm);
    out.push_back(std::move(sv));
  }
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return a.v < b.v; });
  return out;
}

}  // namespace

void canonical_sign(IntVector& v) {
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& e : v) e = -e;
    return;
  }
}

std::vector<ShortVector> short_vectors(const Lattice& l, const Integer& bound, std::uint64_t node_cap) {
  const std::size_t n = l.rank();
  if (n == 0 || bound <= 0) return {};
  try {
    Ldlt f = rat_ldlt(to_rational(l.gram));
    for (std::size_t i = 0; i < n; ++i)
      if (f.d(i, i) <= 0) throw Error(ErrorKind::NotPositiveDefinite, "short vectors need a positive definite lattice");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularPivot)
      throw Error(ErrorKind::NotPositiveDefinite, "short vectors need a positive definite lattice");
    throw;
  }
  IntMatrix t = lll_transform(l.gram);
  IntMatrix reduced = transform_gram(t, l.gram);
  Triangular tri = triangular_data(reduced);

  // Worst-case magnitudes decide whether machine integers are safe.
  Integer worst = 0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, Integer(tri.m[k] * bound * tri.m[k + 1]));
  RatMatrix inv = inverse(to_rational(reduced));
  Integer shift_bound = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Integer s = 0;
    for (std::size_t j = k + 1; j < n; ++j) s += abs(tri.a[j][k]) * (isqrt(floor(Rational(bound) * inv(j, j))) + 1);
    shift_bound = std::max(shift_bound, s);
  }
  const Integer limit = Integer(1) << 120;
  if (worst < limit && shift_bound * shift_bound < limit)
    return to_original_basis(enumerate_reduced<i128>(tri, bound, node_cap), t);
  return to_original_basis(enumerate_reduced<Integer>(tri, bound, node_cap), t);
}

std::vector<IntVector> roots(const Lattice& l, std::uint64_t node_cap) {
  if (!is_negative_definite(l)) throw Error(ErrorKind::NotNegativeDefinite, "roots need a negative definite lattice");
  std::vector<IntVector> out;
  for (auto& sv : short_vectors(rescale(l, -1), Integer(2), node_cap))
    if (sv.norm == 2) out.push_back(std::move(sv.v));
  return out;
}

std::vector<IntVector> roots_in_complement(const RationalSubspace& p, std::uint64_t node_cap) {
  Lattice c = complement_lattice(p);
  if (c.rank() == 0) return {};
  if (!is_negative_definite(c))
    throw Error(ErrorKind::ComplementNotDefinite, "the complement of the subspace is not negative definite");
  IntMatrix basis = integral_basis(c);
  std::vector<IntVector> out;
  for (const auto& r : roots(c, node_cap)) {
    IntVector v = r * basis;
    canonical_sign(v);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class BoxWalker {
 public:
  BoxWalker(const IntMatrix& gram, i128 lo, i128 hi, long bound, const BoxOptions& opts)
      : n_(gram.rows()), lo_(lo), hi_(hi), bound_(bound), opts_(opts) {
    g_.assign(n_, std::vector<i128>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) g_[i][j] = gram(i, j).get_si();
    // Range of the quadratic part of coordinates k.. over the box.
    const i128 c2 = static_cast<i128>(bound) * bound;
    tail_min_.assign(n_ + 1, 0);
    tail_max_.assign(n_ + 1, 0);
    for (std::size_t k = n_; k-- > 0;) {
      i128 mn = tail_min_[k + 1], mx = tail_max_[k + 1];
      i128 d = g_[k][k] * c2;
      if (d < 0) mn += d; else mx += d;
      for (std::size_t j = k + 1; j < n_; ++j) {
        i128 o = 2 * (g_[k][j] < 0 ? -g_[k][j] : g_[k][j]) * c2;
        mn -= o;
        mx += o;
      }
      tail_min_[k] = mn;
      tail_max_[k] = mx;
    }
  }

  BoxSearch run() {
    std::vector<long> x(n_, 0);
    std::vector<i128> lin(n_, 0);  // lin[j] = sum_{i fixed} x_i g_ij
    walk(0, 0, x, lin, false);
    return std::move(result_);
  }

 private:
  // Returns false once the search must stop.
  bool walk(std::size_t k, i128 fixed, std::vector<long>& x, std::vector<i128>& lin, bool nonzero) {
    if (++result_.nodes > opts_.node_cap) throw Error(ErrorKind::ResourceCap, "box search exceeded the node budget");
    if (k == n_) {
      if (nonzero && fixed >= lo_ && fixed <= hi_) {
        IntVector v;
        for (long c : x) v.emplace_back(c);
        result_.vectors.push_back(std::move(v));
        if (result_.vectors.size() >= opts_.max_results) {
          result_.truncated = true;
          return false;
        }
      }
      return true;
    }
    // Bound the remaining contribution: quadratic tail plus linear cross terms.
    i128 linear = 0;
    for (std::size_t j = k; j < n_; ++j) linear += 2 * (lin[j] < 0 ? -lin[j] : lin[j]) * bound_;
    if (fixed + tail_min_[k] - linear > hi_ || fixed + tail_max_[k] + linear < lo_) return true;
    for (long v = nonzero ? -bound_ : 0; v <= bound_; ++v) {
      x[k] = v;
      i128 add = static_cast<i128>(v) * (2 * lin[k] + g_[k][k] * v);
      if (v != 0)
        for (std::size_t j = k + 1; j < n_; ++j) lin[j] += g_[k][j] * v;
      bool go = walk(k + 1, fixed + add, x, lin, nonzero || v != 0);
      if (v != 0)
        for (std::size_t j = k + 1; j < n_; ++j) lin[j] -= g_[k][j] * v;
      if (!go) {
        x[k] = 0;
        return false;
      }
    }
    x[k] = 0;
    return true;
  }

  std::size_t n_;
  i128 lo_, hi_;
  long bound_;
  BoxOptions opts_;
  std::vector<std::vector<i128>> g_;
  std::vector<i128> tail_min_, tail_max_;
  BoxSearch result_;
};

}  // namespace

BoxSearch box_vectors_in_range(const Lattice& l, const Integer& lo, const Integer& hi, long coord_bound,
                               const BoxOptions& opts) {
  if (coord_bound < 0) throw Error(ErrorKind::InvalidInput, "coordinate bound must be nonnegative");
  const std::size_t n = l.rank();
  Integer gmax = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gmax = std::max(gmax, Integer(abs(l.gram(i, j))));
  Integer scale = gmax * coord_bound * coord_bound * Integer(n * n + 1);
  const Integer limit = Integer(1) << 100;
  if (scale >= limit || abs(lo) >= limit || abs(hi) >= limit)
    throw Error(ErrorKind::TooLarge, "box search magnitudes exceed machine range");
  if (n == 0 || lo > hi) return {};
  BoxWalker w(l.gram, from_integer(lo, static_cast<i128*>(nullptr)), from_integer(hi, static_cast<i128*>(nullptr)),
              coord_bound, opts);
  return w.run();
}

BoxSearch box_vectors_of_norm(const Lattice& l, const Integer& norm, long coord_bound, const BoxOptions& opts) {
  return box_vectors_in_range(l, norm, norm, coord_bound, opts);
}

}  // namespace k3lat
