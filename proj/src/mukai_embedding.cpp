#include "k3lat/mukai_embedding.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>

#include "k3lat/catalog.hpp"
#include "k3lat/enumerate.hpp"

namespace k3lat {

namespace {

constexpr std::size_t kNRank = 24;
constexpr std::size_t kPlanes = 4;
constexpr std::size_t kAmbient = kNRank + 2 * kPlanes;  // N + U^4
constexpr std::uint64_t kIsotropicBoxCap = 5'000'000;
constexpr std::size_t kIsotropicTries = 64;
constexpr long kIsotropicMultiplier = 16;

bool e8_linked(int i, int j) {
  if (i > j) std::swap(i, j);
  return (j == i + 1 && j <= 6) || (i == 4 && j == 7);
}

std::vector<long> to_longs(const IntVector& v) {
  std::vector<long> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

class RootSearch {
 public:
  RootSearch(const IntMatrix& pos_gram, std::uint64_t cap) : gram_(pos_gram), cap_(cap) {}

  void set_candidates(const std::vector<ShortVector>& vecs) {
    vec_.assign(1, std::vector<long>(gram_.rows(), 0));
    for (const auto& sv : vecs) {
      auto v = to_longs(sv.v);
      vec_.push_back(v);
      for (auto& x : v) x = -x;
      vec_.push_back(v);
    }
    paired_.clear();
    norm_.clear();
    for (const auto& v : vec_) {
      std::vector<long> p(gram_.rows(), 0);
      for (std::size_t a = 0; a < v.size(); ++a)
        if (v[a] != 0)
          for (std::size_t b = 0; b < v.size(); ++b) p[b] += v[a] * gram_(a, b).get_si();
      norm_.push_back(std::inner_product(p.begin(), p.end(), v.begin(), 0L));
      paired_.push_back(std::move(p));
    }
  }

  bool run() {
    pick_.assign(8, 0);
    color_.assign(8, 0);
    return extend(0, 0);
  }

  RootConfiguration result() const {
    RootConfiguration r;
    for (std::size_t i = 0; i < 8; ++i) {
      IntVector v;
      for (long x : vec_[pick_[i]]) v.emplace_back(x);
      r.invariant_parts.push_back(std::move(v));
      r.colors.push_back(color_[i]);
    }
    return r;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr std::array<int, 8> kOrder{4, 3, 5, 7, 2, 6, 1, 0};

  long dot(std::size_t x, std::size_t y) const {
    return std::inner_product(paired_[x].begin(), paired_[x].end(), vec_[y].begin(), 0L);
  }

  bool extend(std::size_t k, int colors_used) {
    if (++nodes_ > cap_) throw Error(ErrorKind::ResourceCap, "root configuration search exceeded the node budget");
    if (k == 8) return true;
    const int node = kOrder[k];
    for (int c = 0; c <= std::min(colors_used, static_cast<int>(kPlanes) - 1); ++c) {
      for (std::size_t x = 0; x < vec_.size(); ++x) {
        bool ok = true;
        for (std::size_t m = 0; m < k && ok; ++m) {
          const int other = kOrder[m];
          const std::size_t p = pick_[other];
          long ip = -dot(x, p);
          if (color_[other] == c) ip += (norm_[x] - 2) / 2 + (norm_[p] - 2) / 2;
          ok = ip == (e8_linked(node, other) ? 1 : 0);
        }
        if (!ok) continue;
        pick_[node] = x;
        color_[node] = c;
        if (extend(k + 1, std::max(colors_used, c + 1))) return true;
      }
    }
    return false;
  }

  const IntMatrix& gram_;
  std::uint64_t cap_;
  std::vector<std::vector<long>> vec_, paired_;
  std::vector<long> norm_;
  std::vector<std::size_t> pick_;
  std::vector<int> color_;
  std::uint64_t nodes_ = 0;
};

IntMatrix ambient_gram(const IntMatrix& n_gram) {
  IntMatrix g(kAmbient, kAmbient);
  for (std::size_t i = 0; i < kNRank; ++i)
    for (std::size_t j = 0; j < kNRank; ++j) g(i, j) = n_gram(i, j);
  for (std::size_t c = 0; c < kPlanes; ++c) {
    g(kNRank + 2 * c, kNRank + 2 * c + 1) = 1;
    g(kNRank + 2 * c + 1, kNRank + 2 * c) = 1;
  }
  return g;
}

IntMatrix pad(const IntMatrix& rows) {
  IntMatrix out(rows.rows(), kAmbient);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < kNRank; ++j) out(i, j) = rows(i, j);
  return out;
}

// Vectors in the row span of `rows` orthogonal to every row of `vs`.
IntMatrix complement_within(const IntMatrix& rows, const IntMatrix& gram, const IntMatrix& vs) {
  if (rows.rows() == 0) return rows;
  return int_kernel(rows * gram * vs.transpose()) * rows;
}

Integer content_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// Primitive isotropic vectors of the row span, found by a small box search in
// a basis reduced with respect to a positive majorant of the ambient form.
// Primitive isotropic vectors a p + m with p a positive vector of the span and
// m in a negative definite complement of p, smallest a first.
std::vector<IntVector> isotropic_vectors(const IntMatrix& rows, const IntMatrix& gram, const IntMatrix& majorant) {
  auto p = positive_vector_in_span(rows, gram);
  if (!p) return {};
  IntMatrix positives(0, gram.rows());
  positives.append_row(*p);
  IntMatrix m = complement_within(rows, gram, positives);
  while (m.rows() > 0) {
    auto q = positive_vector_in_span(m, gram);
    if (!q) break;
    positives.append_row(*q);
    m = complement_within(rows, gram, positives);
  }
  if (m.rows() == 0) return {};
  m = lll_transform(m * majorant * m.transpose()) * m;
  IntMatrix neg = m * gram * m.transpose();
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
  const Lattice l = make_lattice(neg);
  if (!is_positive_definite(l)) return {};
  const Integer pp = inner(*p, gram, *p);
  std::vector<IntVector> out;
  for (long a = 1; a <= kIsotropicMultiplier && out.size() < kIsotropicTries; ++a) {
    const Integer target = pp * a * a;
    std::vector<ShortVector> found;
    try {
      found = short_vectors(l, target, kIsotropicBoxCap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceCap) throw;
      break;
    }
    for (const auto& sv : found) {
      if (sv.norm != target) continue;
      const IntVector w = sv.v * m;
      for (int sign : {1, -1}) {
        IntVector z(w.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = a * (*p)[i] + sign * w[i];
        Integer g = content_of(z);
        for (auto& x : z) x /= g;
        out.push_back(std::move(z));
      }
      if (out.size() >= kIsotropicTries) break;
    }
  }
  return out;
}

// Some y in the row span with (z, y) = 1, adjusted to be isotropic.
IntVector hyperbolic_partner(const IntMatrix& rows, const IntMatrix& gram, const IntVector& z) {
  IntVector h = z * (gram * rows.transpose());
  IntVector coeff(h.size(), Integer(0));
  Integer g = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] == 0) continue;
    auto e = extended_gcd(g, h[i]);
    for (std::size_t j = 0; j < i; ++j) coeff[j] *= e.s;
    coeff[i] = e.t;
    g = e.g;
  }
  if (g != 1) throw Error(ErrorKind::Precondition, "isotropic vector is not primitive in a unimodular lattice");
  IntVector y = coeff * rows;
  Integer half = inner(y, gram, y) / 2;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= half * z[i];
  return y;
}

// Simple roots of the two E8(-1) components of a rank-16 negative definite
// unimodular lattice, labelled like e8_cartan; nullopt for other root systems.
std::optional<std::array<IntMatrix, 2>> e8_pair(const IntMatrix& rows, const IntMatrix& gram) {
  Lattice l = make_lattice(rows * gram * rows.transpose());
  if (!is_negative_definite(l)) return std::nullopt;
  auto positive = roots(l);  // canonical sign = lexicographically positive
  if (positive.size() != 240) return std::nullopt;
  const std::size_t n = positive.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    IntVector p = positive[i] * l.gram;
    for (std::size_t j = i + 1; j < n; ++j)
      if (dot(p, positive[j]) != 0) parent[find(i)] = find(j);
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(reps.begin(), reps.end(), find(i)) == reps.end()) reps.push_back(find(i));
  if (reps.size() != 2) return std::nullopt;

  std::array<IntMatrix, 2> out;
  for (std::size_t comp = 0; comp < 2; ++comp) {
    std::vector<IntVector> mine;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == reps[comp]) mine.push_back(positive[i]);
    if (mine.size() != 120) return std::nullopt;
    std::set<IntVector> sums;
    for (std::size_t i = 0; i < mine.size(); ++i)
      for (std::size_t j = i + 1; j < mine.size(); ++j) {
        IntVector s = mine[i];
        for (std::size_t t = 0; t < s.size(); ++t) s[t] += mine[j][t];
        sums.insert(std::move(s));
      }
    std::vector<IntVector> simple;
    for (const auto& r : mine)
      if (!sums.count(r)) simple.push_back(r);
    if (simple.size() != 8) return std::nullopt;

    std::vector<std::vector<std::size_t>> nbr(8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (i != j && inner(simple[i], l.gram, simple[j]) != 0) nbr[i].push_back(j);
    auto branch = std::find_if(nbr.begin(), nbr.end(), [](const auto& v) { return v.size() == 3; });
    if (branch == nbr.end()) return std::nullopt;
    const std::size_t b = branch - nbr.begin();
    // Arms of lengths 1, 2, 4 get labels {7}, {5, 6}, {3, 2, 1, 0}.
    std::array<std::vector<std::size_t>, 3> arms;
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t prev = b, cur = nbr[b][k];
      arms[k].push_back(cur);
      while (nbr[cur].size() == 2) {
        std::size_t next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
        prev = cur;
        cur = next;
        arms[k].push_back(cur);
      }
    }
    std::sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    if (arms[0].size() != 1 || arms[1].size() != 2 || arms[2].size() != 4) return std::nullopt;
    std::array<std::size_t, 8> label_of{};
    label_of[4] = b;
    label_of[7] = arms[0][0];
    label_of[5] = arms[1][0];
    label_of[6] = arms[1][1];
    for (std::size_t k = 0; k < 4; ++k) label_of[3 - k] = arms[2][k];
    IntMatrix coords(8, rows.rows());
    for (std::size_t k = 0; k < 8; ++k)
      for (std::size_t t = 0; t < rows.rows(); ++t) coords(k, t) = simple[label_of[k]][t];
    out[comp] = coords * rows;
  }
  return out;
}

struct PlaneSplit {
  std::vector<std::pair<IntVector, IntVector>> planes;
  std::array<IntMatrix, 2> e8;
};

bool split_off_planes(const IntMatrix& x, const IntMatrix& k, const IntMatrix& gram, const IntMatrix& majorant,
                      PlaneSplit& out) {
  if (out.planes.size() == kPlanes) {
    auto e8 = e8_pair(x, gram);
    if (!e8) return false;
    out.e8 = std::move(*e8);
    return true;
  }
  for (const auto& z : isotropic_vectors(k, gram, majorant)) {
    IntVector y = hyperbolic_partner(x, gram, z);
    IntMatrix plane(2, gram.rows());
    for (std::size_t i = 0; i < gram.rows(); ++i) {
      plane(0, i) = z[i];
      plane(1, i) = y[i];
    }
    out.planes.emplace_back(z, y);
    if (split_off_planes(complement_within(x, gram, plane), complement_within(k, gram, plane), gram, majorant, out))
      return true;
    out.planes.pop_back();
  }
  return false;
}

}  // namespace

MukaiEmbedding embed_coinvariant_in_mukai(const Lattice& coinvariant, const Lattice& invariant, std::uint64_t node_cap) {
  if (!coinvariant.has_ambient() || !invariant.has_ambient())
    throw Error(ErrorKind::Precondition, "coinvariant and invariant lattices need their ambient");
  const IntMatrix& n_gram = invariant.ambient->gram;
  if (n_gram.rows() != kNRank || coinvariant.ambient->gram != n_gram)
    throw Error(ErrorKind::Precondition, "both lattices must live in the same rank-24 lattice");
  if (abs(invariant.ambient->det()) != 1 || !invariant.ambient->is_even() || !is_negative_definite(*invariant.ambient))
    throw Error(ErrorKind::Precondition, "ambient must be even, unimodular and negative definite");
  if (invariant.rank() < kPlanes)
    throw Error(ErrorKind::Precondition, "the invariant lattice needs rank at least 4");
  if (coinvariant.rank() + invariant.rank() != kNRank)
    throw Error(ErrorKind::Precondition, "ranks of invariant and coinvariant lattices must add up to 24");
  const IntMatrix inv_basis = integral_basis(invariant);
  const IntMatrix co_basis = integral_basis(coinvariant);
  if (co_basis.rows() && inv_basis * n_gram * co_basis.transpose() != IntMatrix(inv_basis.rows(), co_basis.rows()))
    throw Error(ErrorKind::Precondition, "invariant and coinvariant lattices are not orthogonal");

  MukaiEmbedding result;
  if (coinvariant.rank() == 0) {
    result.map = IntMatrix(0, kMukaiRank);
    return result;
  }

  // Roots of N + U^4 over the invariant lattice spanning E8(-1).
  const IntMatrix pos_gram = Integer(-1) * invariant.gram;
  RootSearch search(pos_gram, node_cap);
  bool found = false;
  for (long bound : {4L, 6L}) {
    search.set_candidates(short_vectors(make_lattice(pos_gram), Integer(bound)));
    if ((found = search.run())) break;
  }
  result.nodes = search.nodes();
  if (!found) throw Error(ErrorKind::NotFoundWithinBounds, "no E8 root configuration over the invariant lattice");
  result.roots = search.result();

  const IntMatrix gram = ambient_gram(n_gram);
  IntMatrix delta(8, kAmbient);
  for (std::size_t i = 0; i < 8; ++i) {
    IntVector lam = result.roots.invariant_parts[i] * inv_basis;
    for (std::size_t j = 0; j < kNRank; ++j) delta(i, j) = lam[j];
    const int c = result.roots.colors[i];
    delta(i, kNRank + 2 * c) = (inner(result.roots.invariant_parts[i], pos_gram, result.roots.invariant_parts[i]) - 2) / 2;
    delta(i, kNRank + 2 * c + 1) = 1;
  }
  if (delta * gram * delta.transpose() != Integer(-1) * e8_cartan())
    throw Error(ErrorKind::Precondition, "root configuration does not span E8(-1)");

  // X = complement of the roots in N + U^4; K = its part inside N^G + U^4.
  IntMatrix x = int_kernel(gram * delta.transpose());
  IntMatrix w(inv_basis.rows() + 2 * kPlanes, kAmbient);
  for (std::size_t i = 0; i < inv_basis.rows(); ++i)
    for (std::size_t j = 0; j < kNRank; ++j) w(i, j) = inv_basis(i, j);
  for (std::size_t i = 0; i < 2 * kPlanes; ++i) w(inv_basis.rows() + i, kNRank + i) = 1;
  IntMatrix k = complement_within(w, gram, delta);

  IntMatrix majorant(kAmbient, kAmbient);
  for (std::size_t i = 0; i < kNRank; ++i)
    for (std::size_t j = 0; j < kNRank; ++j) majorant(i, j) = -n_gram(i, j);
  for (std::size_t i = kNRank; i < kAmbient; ++i) majorant(i, i) = 1;

  PlaneSplit split;
  if (!split_off_planes(x, k, gram, majorant, split))
    throw Error(ErrorKind::NotFoundWithinBounds, "could not split the complement into U^4 + E8(-1)^2");

  // Basis of X and where it goes in the Mukai lattice.
  IntMatrix basis(kMukaiRank, kAmbient), target(kMukaiRank, kMukaiRank);
  std::size_t row = 0;
  for (std::size_t p = 0; p < kPlanes; ++p) {
    const auto& [z, y] = split.planes[p];
    for (std::size_t j = 0; j < kAmbient; ++j) {
      basis(row, j) = z[j];
      basis(row + 1, j) = y[j];
    }
    if (p + 1 < kPlanes) {
      target(row, 17 + 2 * p) = 1;
      target(row + 1, 18 + 2 * p) = 1;
    } else {
      target(row, 0) = 1;
      target(row + 1, 23) = -1;
    }
    row += 2;
  }
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t i = 0; i < 8; ++i, ++row) {
      for (std::size_t j = 0; j < kAmbient; ++j) basis(row, j) = split.e8[b](i, j);
      target(row, 1 + 8 * b + i) = 1;
    }
  const IntMatrix mukai = make("Mukai").gram;
  const IntMatrix basis_gram = basis * gram * basis.transpose();
  if (basis_gram != target * mukai * target.transpose())
    throw Error(ErrorKind::Precondition, "complement basis does not match the Mukai form");

  RatMatrix coords = to_rational(pad(co_basis) * gram * basis.transpose()) * inverse(to_rational(basis_gram));
  if (!is_integral(coords)) throw Error(ErrorKind::NotIntegral, "coinvariant lattice is not inside the complement");
  result.map = to_integer(coords) * target;
  if (transform_gram(result.map, mukai) != coinvariant.gram)
    throw Error(ErrorKind::Precondition, "constructed map is not an isometry");
  return result;
}

}  // namespace k3lat
