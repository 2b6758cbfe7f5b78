#include "k3lat/catalog.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace k3lat {

namespace {

constexpr int kInfinity = 23;

int mod23(long x) { return static_cast<int>(((x % 23) + 23) % 23); }

int inv23(int x) {
  for (int y = 1; y < 23; ++y)
    if (mod23(static_cast<long>(x) * y) == 1) return y;
  throw Error(ErrorKind::InvalidInput, "zero has no inverse mod 23");
}

bool is_square23(int x) {
  for (int y = 1; y < 23; ++y)
    if (mod23(static_cast<long>(y) * y) == x) return true;
  return false;
}

IntMatrix hyperbolic_gram() { return IntMatrix{{0, 1}, {1, 0}}; }

IntMatrix negated(IntMatrix g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
  return g;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Gram -B B^T / scale of the lattice with basis rows B, which must be integral.
IntMatrix scaled_gram(const IntMatrix& b, long scale, bool negative) {
  IntMatrix g = b * b.transpose();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % scale != 0) throw Error(ErrorKind::InvalidInput, "scaled Gram matrix is not integral");
      g(i, j) /= scale;
      if (negative) g(i, j) = -g(i, j);
    }
  return g;
}

IntMatrix basis_of_span(const IntMatrix& gens) {
  IntMatrix b = row_basis(gens);
  if (b.rows() != gens.cols()) throw Error(ErrorKind::InvalidInput, "generators do not span a full lattice");
  return b;
}

IntMatrix golay_rows_as_matrix(long scale) {
  const auto& code = golay();
  IntMatrix m(code.generator.size(), 24);
  for (std::size_t r = 0; r < code.generator.size(); ++r)
    for (std::size_t i = 0; i < 24; ++i)
      if ((code.generator[r] >> i) & 1u) m(r, i) = scale;
  return m;
}

IntMatrix niemeier_a1_basis() {
  IntMatrix gens = golay_rows_as_matrix(1);
  for (std::size_t i = 0; i < 24; ++i) {
    IntVector v(24, Integer(0));
    v[i] = 2;
    gens.append_row(v);
  }
  return basis_of_span(gens);
}

Lattice build_leech() {
  const IntMatrix& b = leech_scaled_basis();
  Lattice l = make_lattice(scaled_gram(b, 8, true), "Leech");
  if (abs(l.det()) != 1 || !l.is_even()) throw Error(ErrorKind::InvalidInput, "Leech construction failed its invariants");
  return l;
}

std::vector<int> parse_cycle_label(const std::string& label) {
  // "1^8 2^8" -> [1 x8, 2 x8]
  std::vector<int> type;
  std::istringstream in(label);
  std::string part;
  while (in >> part) {
    auto caret = part.find('^');
    int len = std::stoi(part.substr(0, caret));
    int count = caret == std::string::npos ? 1 : std::stoi(part.substr(caret + 1));
    for (int i = 0; i < count; ++i) type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

}  // namespace

std::vector<std::uint32_t> BinaryCode::codewords() const {
  std::vector<std::uint32_t> words;
  const std::size_t k = generator.size();
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u) w ^= generator[i];
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  return words;
}

bool BinaryCode::contains(std::uint32_t word) const {
  // Gaussian elimination on a copy of the generator rows.
  std::vector<std::uint32_t> rows = generator;
  std::size_t rank = 0;
  for (int bit = 23; bit >= 0; --bit) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !((rows[pivot] >> bit) & 1u)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && ((rows[i] >> bit) & 1u)) rows[i] ^= rows[rank];
    if ((word >> bit) & 1u) word ^= rows[rank];
    ++rank;
  }
  return word == 0;
}

const BinaryCode& golay() {
  static const BinaryCode code = [] {
    const std::uint32_t g = (1u << 0) | (1u << 2) | (1u << 4) | (1u << 5) | (1u << 6) | (1u << 10) | (1u << 11);
    BinaryCode c;
    for (int k = 0; k < 12; ++k) {
      std::uint32_t w = g << k;
      if (std::popcount(w) % 2 == 1) w |= 1u << kInfinity;
      c.generator.push_back(w);
    }
    return c;
  }();
  return code;
}

std::array<std::uint64_t, 25> weight_distribution(const BinaryCode& c) {
  std::array<std::uint64_t, 25> dist{};
  for (auto w : c.codewords()) ++dist[static_cast<std::size_t>(std::popcount(w))];
  return dist;
}

std::string to_hex(std::uint32_t word) {
  static const char* digits = "0123456789abcdef";
  std::string s(6, '0');
  for (int i = 5; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[word & 0xf];
    word >>= 4;
  }
  return s;
}

bool is_permutation(const Permutation& p) {
  std::array<bool, 24> seen{};
  for (int v : p) {
    if (v < 0 || v >= 24 || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation identity_permutation() {
  Permutation p;
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c;
  for (std::size_t i = 0; i < 24; ++i) c[i] = b[static_cast<std::size_t>(a[i])];
  return c;
}

Permutation power(const Permutation& p, long k) {
  Permutation result = identity_permutation();
  Permutation base = p;
  if (k < 0) {
    for (std::size_t i = 0; i < 24; ++i) base[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    k = -k;
  }
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    base = compose(base, base);
    k >>= 1;
  }
  return result;
}

std::uint32_t apply(const Permutation& p, std::uint32_t word) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < 24; ++i)
    if ((word >> i) & 1u) out |= 1u << p[i];
  return out;
}

bool preserves_code(const Permutation& p, const BinaryCode& c) {
  if (!is_permutation(p)) return false;
  for (auto w : c.generator)
    if (!c.contains(apply(p, w))) return false;
  return true;
}

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<int> type;
  std::array<bool, 24> seen{};
  for (std::size_t i = 0; i < 24; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

long order(const Permutation& p) {
  long o = 1;
  for (int len : cycle_type(p)) o = std::lcm(o, static_cast<long>(len));
  return o;
}

const std::vector<Permutation>& m24_generators() {
  static const std::vector<Permutation> gens = [] {
    Permutation shift, doubling, inversion, extra;
    for (int i = 0; i < 23; ++i) {
      shift[static_cast<std::size_t>(i)] = mod23(i + 1);
      doubling[static_cast<std::size_t>(i)] = mod23(2 * i);
      inversion[static_cast<std::size_t>(i)] = i == 0 ? kInfinity : mod23(-inv23(i));
      long cube = static_cast<long>(i) * i * i;
      if (i == 0)
        extra[0] = 0;
      else if (is_square23(i))
        extra[static_cast<std::size_t>(i)] = mod23(cube * inv23(9));
      else
        extra[static_cast<std::size_t>(i)] = mod23(9 * cube);
    }
    shift[kInfinity] = kInfinity;
    doubling[kInfinity] = kInfinity;
    inversion[kInfinity] = 0;
    extra[kInfinity] = kInfinity;
    std::vector<Permutation> out{shift, doubling, inversion, extra};
    for (const auto& p : out)
      if (!preserves_code(p, golay()))
        throw Error(ErrorKind::NotCodeAutomorphism, "bundled M24 generator does not preserve the Golay code");
    return out;
  }();
  return gens;
}

std::vector<std::string> curated_m24_labels() { return {"1^8 2^8", "1^6 3^6"}; }

Permutation curated_m24_element(const std::string& cycle_label) {
  static std::map<std::string, Permutation> cache;
  static std::mutex cache_mutex;
  std::lock_guard lock(cache_mutex);
  if (auto it = cache.find(cycle_label); it != cache.end()) return it->second;
  const std::vector<int> target = parse_cycle_label(cycle_label);
  const auto& gens = m24_generators();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Permutation g = identity_permutation();
    for (int step = 0; step < 24; ++step) g = compose(g, gens[pick(rng)]);
    const long n = order(g);
    for (long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      Permutation h = power(g, d);
      if (cycle_type(h) == target) {
        cache[cycle_label] = h;
        return h;
      }
    }
  }
  throw Error(ErrorKind::NotFoundWithinBounds, "no M24 element of cycle type " + cycle_label + " found");
}

const IntMatrix& leech_scaled_basis() {
  static const IntMatrix basis = [] {
    IntMatrix gens = golay_rows_as_matrix(2);
    for (std::size_t i = 1; i < 24; ++i) {
      IntVector plus(24, Integer(0)), minus(24, Integer(0));
      plus[0] = 4;
      plus[i] = 4;
      minus[0] = 4;
      minus[i] = -4;
      gens.append_row(plus);
      gens.append_row(minus);
    }
    IntVector odd(24, Integer(1));
    odd[0] = -3;
    gens.append_row(odd);
    return basis_of_span(gens);
  }();
  return basis;
}

IntMatrix perm_isometry_on_leech(const Permutation& p) {
  if (!is_permutation(p)) throw Error(ErrorKind::InvalidInput, "not a permutation of 24 points");
  static const Lattice leech = make("Leech");
  const IntMatrix& b = leech_scaled_basis();
  IntMatrix pm(24, 24);
  for (std::size_t i = 0; i < 24; ++i) pm(i, static_cast<std::size_t>(p[i])) = 1;
  RatMatrix g = to_rational(b * pm) * inverse(to_rational(b));
  if (!is_integral(g)) throw Error(ErrorKind::NotCodeAutomorphism, "permutation does not map the Leech lattice to itself");
  IntMatrix gi = to_integer(g);
  if (transform_gram(gi, leech.gram) != leech.gram)
    throw Error(ErrorKind::NotCodeAutomorphism, "permutation does not preserve the Leech Gram matrix");
  return gi;
}

IntMatrix e8_cartan() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return g;
}

std::vector<std::string> catalog_names() {
  return {"U", "A1", "A1neg", "E8", "E8neg", "K3", "Mukai", "Gamma", "Leech", "NiemeierA1"};
}

Lattice make(const std::string& name) {
  const std::string key = lower(name);
  const IntMatrix e8neg = negated(e8_cartan());
  if (key == "u") return make_lattice(hyperbolic_gram(), "U");
  if (key == "a1") return make_lattice(IntMatrix{{2}}, "A1");
  if (key == "a1neg") return make_lattice(IntMatrix{{-2}}, "A1neg");
  if (key == "e8") return make_lattice(e8_cartan(), "E8");
  if (key == "e8neg") return make_lattice(e8neg, "E8neg");
  if (key == "k3") {
    IntMatrix g = block_diagonal(block_diagonal(e8neg, e8neg), hyperbolic_gram());
    g = block_diagonal(block_diagonal(g, hyperbolic_gram()), hyperbolic_gram());
    return make_lattice(g, "K3");
  }
  if (key == "mukai") {
    IntMatrix k3 = make("K3").gram;
    IntMatrix g(kMukaiRank, kMukaiRank);
    for (std::size_t i = 0; i < 22; ++i)
      for (std::size_t j = 0; j < 22; ++j) g(i + 1, j + 1) = k3(i, j);
    g(0, 23) = g(23, 0) = -1;
    return make_lattice(g, "Mukai");
  }
  if (key == "leech") {
    static const Lattice leech = build_leech();
    return leech;
  }
  if (key == "gamma") return make_lattice(block_diagonal(make("Leech").gram, hyperbolic_gram()), "Gamma");
  if (key == "niemeiera1") {
    static const Lattice n = make_lattice(scaled_gram(niemeier_a1_basis(), 2, true), "NiemeierA1");
    return n;
  }
  throw Error(ErrorKind::UnknownName, "no catalog lattice named '" + name + "'");
}

IntVector weyl_vector() {
  IntVector w(26, Integer(0));
  w[24] = 1;
  return w;
}

bool is_leech_root(const IntVector& d) {
  static const Lattice gamma = make("Gamma");
  if (d.size() != gamma.rank()) throw Error(ErrorKind::InvalidInput, "vector length does not match Gamma");
  return inner(d, gamma.gram, d) == -2 && inner(d, gamma.gram, weyl_vector()) == 1;
}

Lattice gamma_mod_w() {
  Lattice q = isotropic_quotient(make("Gamma"), weyl_vector());
  q.name = "Gamma/w";
  return q;
}

std::vector<std::size_t> mukai_k3_indices() {
  std::vector<std::size_t> idx(22);
  std::iota(idx.begin(), idx.end(), 1);
  return idx;
}

std::vector<std::size_t> mukai_hyperbolic_indices() { return {0, 23}; }

IntMatrix exp_b(const IntVector& beta) {
  if (beta.size() != 22) throw Error(ErrorKind::InvalidInput, "exp_b expects a vector of the K3 lattice (22 entries)");
  static const Lattice k3 = make("K3");
  IntVector bg = beta * k3.gram;
  IntMatrix m = IntMatrix::identity(kMukaiRank);
  for (std::size_t k = 0; k < 22; ++k) {
    m(0, k + 1) = beta[k];
    m(k + 1, 23) = bg[k];
  }
  m(0, 23) = inner(beta, k3.gram, beta) / 2;
  return m;
}

PeriodVectors period_vector(const RatVector& b, const RatVector& alpha) {
  if (b.size() != 22 || alpha.size() != 22)
    throw Error(ErrorKind::InvalidInput, "period vectors expect K3 lattice vectors (22 entries)");
  static const RatMatrix g = to_rational(make("K3").gram);
  PeriodVectors p{RatVector(kMukaiRank, Rational(0)), RatVector(kMukaiRank, Rational(0))};
  p.re[0] = 1;
  for (std::size_t k = 0; k < 22; ++k) {
    p.re[k + 1] = b[k];
    p.im[k + 1] = alpha[k];
  }
  p.re[23] = (inner(b, g, b) - inner(alpha, g, alpha)) / 2;
  p.im[23] = inner(b, g, alpha);
  return p;
}

}  // namespace k3lat
