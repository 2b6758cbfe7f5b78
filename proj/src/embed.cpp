#include "k3lat/embed.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "k3lat/enumerate.hpp"

namespace k3lat {

namespace {

Signature checked_signature(const Lattice& l) {
  if (!l.is_even()) throw Error(ErrorKind::OddLattice, "embedding criteria need an even lattice");
  auto s = signature(l);
  if (s.zero != 0) throw Error(ErrorKind::Degenerate, "embedding criteria need a nondegenerate lattice");
  return s;
}

void require_unimodular_target(SignaturePair t) {
  if (t.pos < 0 || t.neg < 0 || !exists_even_unimodular(t))
    throw Error(ErrorKind::Precondition, "no even unimodular lattice of signature (" + std::to_string(t.pos) + "," +
                                             std::to_string(t.neg) + ")");
}

bool image_is_primitive(const IntMatrix& rows) {
  if (rows.rows() == 0) return true;
  for (const auto& d : snf(rows).invariants())
    if (d != 1) return false;
  return true;
}

}  // namespace

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Guaranteed: return "guaranteed";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::Unknown: return "unknown";
  }
  return "unknown";
}

bool exists_even_unimodular(SignaturePair sig) { return ((sig.pos - sig.neg) % 8 + 8) % 8 == 0; }

Verdict nikulin_existence(const Lattice& l, SignaturePair target, A1Sign a1) {
  Signature s = checked_signature(l);
  require_unimodular_target(target);
  const long p = static_cast<long>(s.pos), n = static_cast<long>(s.neg);
  const long rk = p + n;
  const long room = target.pos + target.neg - rk;
  FiniteQuadraticForm a = disc_form(l);
  const long len = static_cast<long>(ell(a));
  Verdict v;
  std::vector<std::pair<std::string, long>> numbers{{"sig_pos", p},         {"sig_neg", n},       {"rank", rk},
                                                    {"target_pos", target.pos}, {"target_neg", target.neg},
                                                    {"ell", len},           {"room", room}};
  if (p > target.pos || n > target.neg) {
    v.status = VerdictStatus::Refuted;
    v.reasons.push_back({"signature-fit", "signature of L does not fit into the target", numbers});
    return v;
  }
  if (len > room) {
    v.status = VerdictStatus::Refuted;
    v.reasons.push_back({"length-bound", "l(A_L) exceeds the rank of any orthogonal complement", numbers});
    return v;
  }
  if (len < room) {
    v.status = VerdictStatus::Guaranteed;
    v.reasons.push_back({"strict-length", "l(A_L) < rk(target) - rk(L) with fitting signature", numbers});
    return v;
  }
  // Equality case.
  if (!(target.pos == 0 && target.neg == 24)) {
    v.reasons.push_back({"equality-case", "l(A_L) = rk(target) - rk(L); refinement only applied for (0,24)", numbers});
    return v;
  }
  for (const auto& prime : primes_dividing(a)) {
    if (prime == 2) continue;
    const long lp = static_cast<long>(ell_p(a, prime));
    auto nums = numbers;
    nums.emplace_back("prime", prime.get_si());
    nums.emplace_back("ell_p", lp);
    if (lp >= room) {
      v.reasons.push_back({"odd-part-length", "an odd p-part has length equal to the room", nums});
      return v;
    }
  }
  try {
    if (!splits_off_a1(a, a1)) {
      v.reasons.push_back({"a1-split", "the 2-part does not split off the A1 form", numbers});
      return v;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    v.reasons.push_back({"a1-split", "2-part too large for the splitting test", numbers});
    return v;
  }
  v.status = VerdictStatus::Guaranteed;
  v.reasons.push_back({"equality-refined", "odd p-parts are short and the 2-part splits off the A1 form", numbers});
  return v;
}

Verdict nikulin_uniqueness(const Lattice& l, SignaturePair target) {
  Signature s = checked_signature(l);
  require_unimodular_target(target);
  const long p = static_cast<long>(s.pos), n = static_cast<long>(s.neg);
  if (p >= target.pos || n >= target.neg)
    throw Error(ErrorKind::Precondition, "uniqueness rule needs room on both signature sides");
  const long rk = p + n;
  const long room = target.pos + target.neg - rk;
  const long len = static_cast<long>(ell(disc_form(l)));
  Verdict v;
  std::vector<std::pair<std::string, long>> numbers{{"rank", rk}, {"ell", len}, {"room", room}};
  if (len + 2 <= room) {
    v.status = VerdictStatus::Guaranteed;
    v.reasons.push_back({"unique-embedding", "l(A_L) + 2 <= rk(target) - rk(L): embedding exists and is unique", numbers});
  } else {
    v.reasons.push_back({"unique-embedding", "l(A_L) + 2 > rk(target) - rk(L)", numbers});
  }
  return v;
}

PartnerSpec orthogonal_partner_spec(const Lattice& l, SignaturePair target) {
  Signature s = checked_signature(l);
  const long p = static_cast<long>(s.pos), n = static_cast<long>(s.neg);
  if (p > target.pos || n > target.neg)
    throw Error(ErrorKind::Precondition, "lattice does not fit into the target signature");
  return {{target.pos - p, target.neg - n}, negate(disc_form(l))};
}

EmbeddingCheck check_embedding(const IntMatrix& map, const Lattice& l, const Lattice& m) {
  EmbeddingCheck c;
  if (map.rows() != l.rank() || map.cols() != m.rank()) return c;
  c.gram_matches = transform_gram(map, m.gram) == l.gram;
  c.primitive = rank(map) == map.rows() && image_is_primitive(map);
  return c;
}

bool verify_embedding(const EmbeddingWitness& w, const Lattice& l, const Lattice& m) {
  auto c = check_embedding(w.map, l, m);
  return c.gram_matches && c.primitive;
}

namespace {

class EmbeddingSearcher {
 public:
  EmbeddingSearcher(const IntMatrix& source_gram, const IntMatrix& target_gram, const EmbeddingOptions& opts)
      : src_(source_gram), tgt_(target_gram), opts_(opts) {
    tgt_long_.assign(tgt_.rows(), std::vector<long>(tgt_.rows()));
    for (std::size_t a = 0; a < tgt_.rows(); ++a)
      for (std::size_t b = 0; b < tgt_.rows(); ++b) tgt_long_[a][b] = tgt_(a, b).get_si();
  }

  // Candidates for each norm, both signs, canonical representative first.
  void add_candidates(const std::vector<ShortVector>& vecs) {
    for (const auto& sv : vecs) {
      std::vector<long> v;
      for (const auto& c : sv.v) v.push_back(c.get_si());
      std::vector<long> neg(v.size());
      std::transform(v.begin(), v.end(), neg.begin(), [](long x) { return -x; });
      auto& bucket = by_norm_[sv.norm.get_si()];
      bucket.push_back({v, true});
      bucket.push_back({neg, false});
    }
  }

  std::optional<IntMatrix> run() {
    const std::size_t k = src_.rows();
    chosen_.assign(k, {});
    if (k == 0) return IntMatrix(0, tgt_.rows());
    // live_[d][l]: candidates for level l consistent with the images chosen above depth d.
    live_.assign(k + 1, std::vector<std::vector<const Candidate*>>(k));
    for (std::size_t l = 0; l < k; ++l) {
      auto it = by_norm_.find(src_(l, l).get_si());
      if (it == by_norm_.end()) return std::nullopt;
      for (const auto& c : it->second)
        if (l > 0 || c.canonical) live_[0][l].push_back(&c);  // -1 is an isometry of the target
    }
    if (extend(0)) {
      IntMatrix out(k, tgt_.rows());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < tgt_.rows(); ++j) out(i, j) = chosen_[i][j];
      return out;
    }
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Candidate {
    std::vector<long> v;
    bool canonical;
  };

  bool extend(std::size_t i) {
    if (++nodes_ > opts_.node_cap) throw Error(ErrorKind::ResourceCap, "embedding search exceeded the node budget");
    const std::size_t k = src_.rows();
    if (i == k) return true;
    const std::size_t dim = tgt_.rows();
    std::vector<long> paired(dim);
    for (const Candidate* cand : live_[i][i]) {
      chosen_[i] = cand->v;
      if (opts_.require_primitive && !partial_primitive(i + 1)) continue;
      std::fill(paired.begin(), paired.end(), 0);
      for (std::size_t a = 0; a < dim; ++a)
        if (long c = cand->v[a])
          for (std::size_t b = 0; b < dim; ++b) paired[b] += c * tgt_long_[a][b];
      bool viable = true;
      for (std::size_t l = i + 1; l < k && viable; ++l) {
        auto& next = live_[i + 1][l];
        next.clear();
        const long want = src_(l, i).get_si();
        for (const Candidate* c : live_[i][l]) {
          long dot = 0;
          for (std::size_t t = 0; t < dim; ++t) dot += c->v[t] * paired[t];
          if (dot == want) next.push_back(c);
        }
        viable = !next.empty();
      }
      if (viable && extend(i + 1)) return true;
    }
    return false;
  }

  bool partial_primitive(std::size_t count) {
    IntMatrix rows(count, tgt_.rows());
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < tgt_.rows(); ++j) rows(i, j) = chosen_[i][j];
    return image_is_primitive(opts_.frame ? rows * *opts_.frame : rows);
  }

  const IntMatrix& src_;
  const IntMatrix& tgt_;
  EmbeddingOptions opts_;
  std::map<long, std::vector<Candidate>> by_norm_;
  std::vector<std::vector<long>> tgt_long_;
  std::vector<std::vector<long>> chosen_;
  std::vector<std::vector<std::vector<const Candidate*>>> live_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

EmbeddingSearch search_embedding(const Lattice& l, const Lattice& m, const EmbeddingOptions& opts) {
  if (l.rank() > m.rank()) return {std::nullopt, true, 0};
  const bool pos = is_positive_definite(l) && is_positive_definite(m);
  const bool neg = is_negative_definite(l) && is_negative_definite(m);
  if (!pos && !neg) throw Error(ErrorKind::Precondition, "embedding search needs definite lattices of the same sign");
  const long sign = pos ? 1 : -1;
  Lattice src = rescale(l, sign);
  Lattice tgt = rescale(m, sign);
  EmbeddingSearch result;
  if (src.rank() == 0) {
    result.witness = EmbeddingWitness{IntMatrix(0, m.rank()), true};
    return result;
  }

  // Reduce the source, then place long vectors first for early pruning.
  IntMatrix t = lll_transform(src.gram);
  std::vector<std::size_t> order(src.rank());
  std::iota(order.begin(), order.end(), 0);
  IntMatrix reduced = transform_gram(t, src.gram);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return reduced(a, a) > reduced(b, b); });
  IntMatrix perm_t = t.select_rows(order);
  IntMatrix src_gram = transform_gram(perm_t, src.gram);

  Integer max_norm = 0;
  for (std::size_t i = 0; i < src_gram.rows(); ++i) max_norm = std::max(max_norm, src_gram(i, i));
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < tgt.rank(); ++j)
      if (abs(tgt.gram(i, j)) > Integer(1) << 20)
        throw Error(ErrorKind::TooLarge, "target Gram entries too large for the search kernel");

  EmbeddingSearcher searcher(src_gram, tgt.gram, opts);
  searcher.add_candidates(short_vectors(tgt, max_norm));
  auto found = searcher.run();
  result.nodes = searcher.nodes();
  if (!found) {
    result.exhaustive = true;
    return result;
  }
  // Rows of `found` are images of perm_t's rows; pull back to the original basis.
  IntMatrix map = to_integer(inverse(to_rational(perm_t)) * to_rational(*found));
  EmbeddingWitness w{map, opts.frame ? image_is_primitive(map * *opts.frame) : check_embedding(map, l, m).primitive};
  result.witness = std::move(w);
  return result;
}

}  // namespace k3lat
