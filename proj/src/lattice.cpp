#include "k3lat/lattice.hpp"

#include <algorithm>

namespace k3lat {

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (mpz_odd_p(gram(i, i).get_mpz_t())) return false;
  return true;
}

Lattice make_lattice(IntMatrix gram, std::string name) {
  Lattice l;
  l.gram = std::move(gram);
  l.name = std::move(name);
  validate(l);
  return l;
}

void validate(const Lattice& l) {
  if (!is_symmetric(l.gram)) throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
  if (l.basis.has_value() != (l.ambient != nullptr))
    throw Error(ErrorKind::InvalidInput, "basis and ambient must be given together");
  if (!l.has_ambient()) return;
  const RatMatrix& b = *l.basis;
  if (b.rows() != l.rank() || b.cols() != l.ambient->rank())
    throw Error(ErrorKind::InvalidInput, "basis shape does not match gram and ambient");
  if (rank(b) != b.rows()) throw Error(ErrorKind::InvalidInput, "basis rows are dependent");
  if (b * to_rational(l.ambient->gram) * b.transpose() != to_rational(l.gram))
    throw Error(ErrorKind::InvalidInput, "gram != basis * ambient.gram * basis^T");
}

IntMatrix integral_basis(const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "lattice has no ambient");
  return to_integer(*s.basis);
}

Signature signature(const Lattice& l) { return congruence_signature(to_rational(l.gram)); }

bool is_positive_definite(const Lattice& l) { return signature(l).pos == l.rank(); }
bool is_negative_definite(const Lattice& l) { return signature(l).neg == l.rank(); }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  Lattice s;
  s.gram = block_diagonal(a.gram, b.gram);
  if (!a.name.empty() && !b.name.empty()) s.name = a.name + "+" + b.name;
  return s;
}

Lattice rescale(const Lattice& l, long factor) {
  if (factor == 0) throw Error(ErrorKind::InvalidInput, "rescale by zero");
  Lattice s;
  s.gram = Integer(factor) * l.gram;
  if (!l.name.empty()) s.name = l.name + "(" + std::to_string(factor) + ")";
  return s;
}

RatMatrix dual_basis(const Lattice& l) {
  if (!l.is_nondegenerate()) throw Error(ErrorKind::Degenerate, "dual of a degenerate lattice");
  return inverse(to_rational(l.gram));
}

Lattice sublattice(std::shared_ptr<const Lattice> ambient, const IntMatrix& vecs, std::string name) {
  if (vecs.rows() > 0 && vecs.cols() != ambient->rank())
    throw Error(ErrorKind::InvalidInput, "vectors do not live in the ambient lattice");
  IntMatrix b = vecs.rows() ? row_basis(vecs) : IntMatrix(0, ambient->rank());
  Lattice s;
  s.gram = b * ambient->gram * b.transpose();
  s.basis = to_rational(b);
  s.ambient = std::move(ambient);
  s.name = std::move(name);
  return s;
}

Lattice sublattice(const Lattice& ambient, const IntMatrix& vecs, std::string name) {
  return sublattice(std::make_shared<const Lattice>(ambient), vecs, std::move(name));
}

namespace {

// Standard-dot-product orthogonal of the rows of c, then its orthogonal again:
// the saturated integral points of the row space.
IntMatrix saturate_rows(const IntMatrix& c, std::size_t n) {
  if (c.rows() == 0) return IntMatrix(0, n);
  IntMatrix k = int_kernel(c.transpose());
  if (k.rows() == 0) return IntMatrix::identity(n);
  return int_kernel(k.transpose());
}

}  // namespace

Lattice saturation(const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "saturation needs an ambient lattice");
  IntMatrix sat = saturate_rows(clear_row_denominators(*s.basis), s.ambient->rank());
  return sublattice(s.ambient, sat, s.name.empty() ? std::string{} : s.name + "^sat");
}

Integer saturation_index(const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "saturation needs an ambient lattice");
  if (s.rank() == 0) return 1;
  Lattice sat = saturation(s);
  // |det| of S's basis expressed in the saturated basis; works for degenerate S.
  RatMatrix coords(s.rank(), sat.rank());
  for (std::size_t i = 0; i < s.rank(); ++i) {
    RatVector c = coordinates_in(sat, s.basis->row(i));
    for (std::size_t j = 0; j < c.size(); ++j) coords(i, j) = c[j];
  }
  Rational d = determinant(coords);
  return abs(d.get_num());
}

bool is_primitive_sublattice(const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "primitivity needs an ambient lattice");
  if (!is_integral(*s.basis)) return false;
  if (s.rank() == 0) return true;
  auto inv = snf(to_integer(*s.basis)).invariants();
  return std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
}

Lattice orth_complement(const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "orth_complement needs an ambient lattice");
  if (!s.ambient->is_nondegenerate()) throw Error(ErrorKind::DegenerateInput, "ambient lattice is degenerate");
  if (!s.is_nondegenerate()) throw Error(ErrorKind::DegenerateInput, "sublattice is degenerate");
  const std::size_t n = s.ambient->rank();
  if (s.rank() == 0) return sublattice(s.ambient, IntMatrix::identity(n));
  IntMatrix c = clear_row_denominators(*s.basis);
  IntMatrix k = int_kernel(s.ambient->gram * c.transpose());
  return sublattice(s.ambient, k, s.name.empty() ? std::string{} : s.name + "^perp");
}

bool is_primitive_vector(const IntVector& v, const Lattice& l) {
  if (v.size() != l.rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match rank");
  Integer g = content(v);
  if (g == 0) throw Error(ErrorKind::ZeroVector, "primitivity of the zero vector");
  return g == 1;
}

bool is_primitive_in_dual(const IntVector& v, const Lattice& l) {
  if (v.size() != l.rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match rank");
  if (content(v) == 0) throw Error(ErrorKind::ZeroVector, "primitivity of the zero vector");
  if (!l.is_nondegenerate()) throw Error(ErrorKind::Degenerate, "dual of a degenerate lattice");
  // v = sum (v.gram)_i e_i^* in the dual basis.
  return content(v * l.gram) == 1;
}

Split split_decompose(const RatVector& v, const Lattice& s) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "split_decompose needs an ambient lattice");
  if (!s.is_nondegenerate()) throw Error(ErrorKind::DegenerateInput, "sublattice is degenerate");
  if (!s.ambient->is_nondegenerate()) throw Error(ErrorKind::DegenerateInput, "ambient lattice is degenerate");
  const RatMatrix& b = *s.basis;
  RatMatrix g = to_rational(s.ambient->gram);
  RatVector pairing = v * (g * b.transpose());
  RatVector coeffs = pairing * inverse(to_rational(s.gram));
  Split out;
  out.in_span = coeffs * b;
  out.in_complement = v;
  for (std::size_t i = 0; i < v.size(); ++i) out.in_complement[i] -= out.in_span[i];
  return out;
}

RatMatrix restricted_gram(const RationalSubspace& p) {
  if (rank(p.spanning) != p.spanning.rows()) throw Error(ErrorKind::DependentSpan, "spanning vectors are dependent");
  return p.spanning * to_rational(p.ambient->gram) * p.spanning.transpose();
}

bool is_positive_subspace(const RationalSubspace& p) {
  RatMatrix g = restricted_gram(p);
  return congruence_signature(g).pos == p.dim();
}

Lattice complement_lattice(const RationalSubspace& p) {
  if (rank(p.spanning) != p.spanning.rows()) throw Error(ErrorKind::DependentSpan, "spanning vectors are dependent");
  const std::size_t n = p.ambient->rank();
  if (p.dim() == 0) return sublattice(p.ambient, IntMatrix::identity(n));
  IntMatrix c = clear_row_denominators(p.spanning);
  return sublattice(p.ambient, int_kernel(p.ambient->gram * c.transpose()));
}

Lattice lattice_in_subspace(const RationalSubspace& p) {
  if (rank(p.spanning) != p.spanning.rows()) throw Error(ErrorKind::DependentSpan, "spanning vectors are dependent");
  return sublattice(p.ambient, saturate_rows(clear_row_denominators(p.spanning), p.ambient->rank()));
}

namespace {

struct Diagonalization {
  RatMatrix t;  // t * g * t^T = diag(d)
  std::vector<Rational> d;
};

// Rational congruence diagonalization with symmetric pivoting.
Diagonalization diagonalize(const IntMatrix& g) {
  const std::size_t n = g.rows();
  RatMatrix a = to_rational(g);
  RatMatrix t = RatMatrix::identity(n);
  auto add_to = [&](std::size_t k, std::size_t j, const Rational& f) {  // basis_k += f basis_j
    for (std::size_t c = 0; c < n; ++c) t(k, c) += f * t(j, c);
    for (std::size_t c = 0; c < n; ++c) a(k, c) += f * a(j, c);
    for (std::size_t r = 0; r < n; ++r) a(r, k) += f * a(r, j);
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        t.swap_rows(k, j);
        a.swap_rows(k, j);
        a.swap_cols(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;
        add_to(k, j, Rational(1));
      }
    }
    for (std::size_t i = k + 1; i < n; ++i)
      if (a(i, k) != 0) add_to(i, k, -a(i, k) / a(k, k));
  }
  Diagonalization out{t, {}};
  for (std::size_t i = 0; i < n; ++i) out.d.push_back(a(i, i));
  return out;
}

// Integral positive definite form t^-1 |D| t^-T; zero pivots count as 1.
IntMatrix adapted_majorant(const Diagonalization& dg) {
  const std::size_t n = dg.d.size();
  RatMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = dg.d[i] == 0 ? Rational(1) : abs(dg.d[i]);
  const RatMatrix ti = inverse(dg.t);
  RatMatrix m = ti * d * ti.transpose();
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) den = lcm(den, Integer(m(i, j).get_den()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) *= den;
  return to_integer(m);
}

}  // namespace

// The span is LLL-reduced against a majorant adapted to its own Gram matrix;
// then the shortest positive row, an indefinite binary subform, or a cleared
// positive row of a diagonalization of the reduced Gram.
std::optional<IntVector> positive_vector_in_span(const IntMatrix& rows, const IntMatrix& gram) {
  IntMatrix b = row_basis(rows);
  if (b.rows() == 0) return std::nullopt;
  b = lll_transform(adapted_majorant(diagonalize(b * gram * b.transpose()))) * b;
  const IntMatrix g = b * gram * b.transpose();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (g(i, i) > 0 && (!best || g(i, i) < g(*best, *best))) best = i;
  if (best) return b.row(*best);
  auto combine = [&](const Integer& x, std::size_t i, const Integer& y, std::size_t j) {
    IntVector w(b.cols());
    for (std::size_t t = 0; t < w.size(); ++t) w[t] = x * b(i, t) + y * b(j, t);
    return w;
  };
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.rows(); ++j) {
      if (i == j || g(i, j) * g(i, j) <= g(i, i) * g(j, j)) continue;
      if (g(i, i) == 0) {
        Integer t = abs(g(j, j)) / (2 * abs(g(i, j))) + 1;
        if (g(i, j) < 0) t = -t;
        return combine(t, i, Integer(1), j);
      }
      return combine(-g(i, j), i, g(i, i), j);
    }
  const Diagonalization dg = diagonalize(g);
  for (std::size_t i = 0; i < dg.d.size(); ++i) {
    if (dg.d[i] <= 0) continue;
    RatMatrix row(1, g.rows());
    for (std::size_t j = 0; j < g.rows(); ++j) row(0, j) = dg.t(i, j);
    return (clear_row_denominators(row) * b).row(0);
  }
  return std::nullopt;
}

RatVector to_ambient(const Lattice& s, const RatVector& coords) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "lattice has no ambient");
  return coords * *s.basis;
}

IntVector to_ambient(const Lattice& s, const IntVector& coords) {
  return to_integer(to_ambient(s, to_rational(coords)));
}

RatVector coordinates_in(const Lattice& s, const RatVector& v) {
  if (!s.has_ambient()) throw Error(ErrorKind::Precondition, "lattice has no ambient");
  const RatMatrix& b = *s.basis;
  if (s.rank() == 0) {
    for (const auto& x : v)
      if (x != 0) throw Error(ErrorKind::InvalidInput, "vector is not in the span");
    return {};
  }
  // Solve c * b = v by elimination on the transposed system.
  RatMatrix aug = hstack(b.transpose(), RatMatrix::from_rows({v}, v.size()).transpose());
  const std::size_t k = b.rows();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < k && r < aug.rows(); ++c) {
    std::size_t p = r;
    while (p < aug.rows() && aug(p, c) == 0) ++p;
    if (p == aug.rows()) continue;
    aug.swap_rows(r, p);
    Rational piv = aug(r, c);
    for (std::size_t j = 0; j <= k; ++j) aug(r, j) /= piv;
    for (std::size_t i = 0; i < aug.rows(); ++i) {
      if (i == r || aug(i, c) == 0) continue;
      Rational f = aug(i, c);
      for (std::size_t j = 0; j <= k; ++j) aug(i, j) -= f * aug(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < aug.rows(); ++i)
    if (aug(i, k) != 0) throw Error(ErrorKind::InvalidInput, "vector is not in the span");
  RatVector c(k, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = aug(i, k);
  return c;
}

Lattice isotropic_quotient(const Lattice& l, const IntVector& w) {
  if (inner(w, l.gram, w) != 0) throw Error(ErrorKind::InvalidInput, "vector is not isotropic");
  if (content(w) != 1) throw Error(ErrorKind::InvalidInput, "vector is not primitive");
  // w-perp in l-coordinates.
  IntMatrix col(l.rank(), 1);
  IntVector gw = w * l.gram;
  for (std::size_t i = 0; i < l.rank(); ++i) col(i, 0) = gw[i];
  IntMatrix perp = int_kernel(col);
  // Coordinates of w in the perp basis; primitive since w is primitive in l.
  Lattice perp_lat = sublattice(l, perp);
  IntVector wc = to_integer(coordinates_in(perp_lat, to_rational(w)));
  // U * wc^T = e1 for the HNF transform U, so the columns of U^-1 are a
  // unimodular completion of wc with wc first.
  IntMatrix wm(wc.size(), 1);
  for (std::size_t i = 0; i < wc.size(); ++i) wm(i, 0) = wc[i];
  auto h = hnf(wm);
  IntMatrix uinv = to_integer(inverse(to_rational(h.u)));
  IntMatrix rest(perp.rows() - 1, perp.rows());
  for (std::size_t j = 1; j < perp.rows(); ++j)
    for (std::size_t i = 0; i < perp.rows(); ++i) rest(j - 1, i) = uinv(i, j);
  IntMatrix amb_rows = rest * perp;
  Lattice q;
  q.gram = amb_rows * l.gram * amb_rows.transpose();
  q.name = l.name.empty() ? std::string{} : l.name + "/w";
  return q;
}

IntMatrix transform_gram(const IntMatrix& g, const IntMatrix& gram) { return g * gram * g.transpose(); }

}  // namespace k3lat
