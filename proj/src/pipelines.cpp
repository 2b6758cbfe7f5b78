#include "k3lat/pipelines.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "k3lat/catalog.hpp"
#include "k3lat/disc_form.hpp"
#include "k3lat/embed.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/mukai_embedding.hpp"

namespace k3lat {

namespace {

constexpr long kLemmaRank = 24;
constexpr std::size_t kStarCandidates = 256;

std::shared_ptr<const Lattice> mukai_ptr() {
  static const auto p = std::make_shared<const Lattice>(make("Mukai"));
  return p;
}

const IntMatrix& leech_gram() {
  static const IntMatrix g = make("Leech").gram;
  return g;
}

std::size_t ell_of(const Lattice& l) { return l.rank() == 0 ? 0 : ell(disc_form(l)); }

std::size_t root_count(const Lattice& l) { return l.rank() == 0 ? 0 : roots(l).size(); }

bool is_mukai(const Lattice& l) { return l.gram == mukai_ptr()->gram; }

IntMatrix basis_or_empty(const Lattice& s, std::size_t cols) {
  return s.rank() ? integral_basis(s) : IntMatrix(0, cols);
}

IntMatrix complement_within(const IntMatrix& rows, const IntMatrix& gram, const IntMatrix& vs) {
  if (rows.rows() == 0 || vs.rows() == 0) return rows;
  return int_kernel(rows * gram * vs.transpose()) * rows;
}

IntMatrix rows_of(std::initializer_list<IntVector> vs, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& v : vs) m.append_row(v);
  return m;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

// Positive definite form comparable to the Mukai form: -gram on the E8
// blocks, identity on the hyperbolic coordinates.
IntMatrix mukai_majorant() {
  const IntMatrix& g = mukai_ptr()->gram;
  IntMatrix m = IntMatrix::identity(kMukaiRank);
  for (std::size_t i = 1; i <= 16; ++i)
    for (std::size_t j = 1; j <= 16; ++j) m(i, j) = -g(i, j);
  return m;
}

IntMatrix reduce(const IntMatrix& rows, const IntMatrix& majorant) {
  if (rows.rows() == 0) return rows;
  return lll_transform(rows * majorant * rows.transpose()) * rows;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  IntVector combination(const IntMatrix& rows, long bound) {
    IntVector c(rows.rows());
    for (auto& x : c) x = static_cast<long>(rng_() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
    return c * rows;
  }

  // m q + noise for a positive q of the span and the least m making it positive.
  std::optional<IntVector> positive(const IntMatrix& rows, const IntMatrix& gram, long bound) {
    auto q = positive_vector_in_span(rows, gram);
    if (!q) return std::nullopt;
    IntVector n = combination(rows, bound);
    const Integer qq = inner(*q, gram, *q), qn = inner(*q, gram, n), nn = inner(n, gram, n);
    Integer m = 1;
    while (m * m * qq + 2 * m * qn + nn <= 0) m *= 2;
    for (Integer lo = m / 2 + 1; lo < m;) {
      Integer mid = (lo + m) / 2;
      if (mid * mid * qq + 2 * mid * qn + nn > 0) m = mid; else lo = mid + 1;
    }
    for (std::size_t i = 0; i < n.size(); ++i) n[i] += m * (*q)[i];
    return n;
  }

 private:
  std::mt19937_64 rng_;
};

Json rows_json(const IntMatrix& m) { return to_json(m); }

Json verdict_or_error(const Lattice& l, SignaturePair target) {
  try {
    return to_json(nikulin_existence(l, target));
  } catch (const Error& e) {
    return Json{{"status", "unknown"}, {"error", e.what()}};
  }
}

void require_mukai_sublattice(const Lattice& ng) {
  if (!ng.has_ambient() || !is_mukai(*ng.ambient))
    throw Error(ErrorKind::Precondition, "lattice must be a sublattice of the Mukai lattice");
}

bool fixes_rows(const std::vector<IntMatrix>& gens, const RatMatrix& rows) {
  for (const auto& g : gens)
    if (rows * to_rational(g) != rows) return false;
  return true;
}

}  // namespace

Json Certificate::to_json() const {
  return {{"schema_version", kCertificateSchemaVersion}, {"kind", kind}, {"pass", pass}, {"evidence", evidence}};
}

Json to_json(const SearchBounds& b) {
  return {{"norm_bound", b.norm_bound}, {"coord_bound", b.coord_bound}, {"cap", to_json(Integer(std::to_string(b.cap)))}};
}

Certificate thm1_condition_ii(const GroupAction& a) {
  if (a.lattice.gram != leech_gram()) throw Error(ErrorKind::Precondition, "action must be on the Leech lattice");
  validate(a);
  auto split = invariant_split(a);
  Certificate c{"thm1-ii"};
  const long rk_inv = static_cast<long>(split.invariant.rank());
  bool minus_identity = false;
  if (rk_inv == 0) {
    IntMatrix minus = Integer(-1) * IntMatrix::identity(a.lattice.rank());
    auto elems = closure(a);
    minus_identity = std::binary_search(elems.begin(), elems.end(), minus);
  }
  c.evidence["rank_invariant"] = rk_inv;
  c.evidence["rank_coinvariant"] = static_cast<long>(split.coinvariant.rank());
  c.evidence["coinvariant_root_count"] = static_cast<long>(root_count(split.coinvariant));
  c.evidence["ell_coinvariant"] = static_cast<long>(ell_of(split.coinvariant));
  c.evidence["contains_minus_identity"] = minus_identity;
  if (minus_identity) c.evidence["note"] = "contains -id";
  c.pass = rk_inv >= 4;
  return c;
}

Certificate lemma_standard_check(const GroupAction& a, const RationalSubspace& pi) {
  const Lattice& lam = a.lattice;
  if (lam.rank() != static_cast<std::size_t>(kLemmaRank) || abs(lam.det()) != 1 || !lam.is_even())
    throw Error(ErrorKind::Precondition, "action must be on an even unimodular lattice of rank 24");
  auto sig = signature(lam);
  if (sig.pos != 4 || sig.neg != 20) throw Error(ErrorKind::Precondition, "ambient must have signature (4,20)");
  validate(a);
  if (!pi.ambient || pi.ambient->gram != lam.gram)
    throw Error(ErrorKind::Precondition, "four-space must live in the acting lattice");
  if (pi.dim() != 4 || !is_positive_subspace(pi))
    throw Error(ErrorKind::Precondition, "four-space must be positive of dimension 4");
  if (!fixes_rows(a.generators, pi.spanning))
    throw Error(ErrorKind::Precondition, "the group does not fix the four-space");
  auto planted = roots_in_complement(pi);
  if (!planted.empty())
    throw Error(ErrorKind::Precondition, "hypothesis violated: a (-2)-class lies in the complement of the four-space");
  return lemma_clauses(a);
}

Certificate lemma_clauses(const GroupAction& a) {
  if (a.lattice.rank() != static_cast<std::size_t>(kLemmaRank))
    throw Error(ErrorKind::Precondition, "action must be on a lattice of rank 24");
  validate(a);
  auto split = invariant_split(a);
  if (split.invariant.rank() && !split.invariant.is_nondegenerate())
    throw Error(ErrorKind::Degenerate, "invariant lattice is degenerate");
  const Lattice& lg = split.coinvariant;
  const long rk = static_cast<long>(lg.rank());
  const long len = static_cast<long>(ell_of(lg));
  Certificate c{"lemma"};
  const bool neg_def = rk == 0 || is_negative_definite(lg);
  const bool rank_ok = rk <= 20;
  const bool root_free = neg_def && root_count(lg) == 0;
  const bool disc_trivial = rk == 0 || disc_action_is_trivial(a, lg);
  const bool ell_ok = len <= kLemmaRank - rk;
  c.evidence["rank_coinvariant"] = rk;
  c.evidence["rank_invariant"] = static_cast<long>(split.invariant.rank());
  c.evidence["det_coinvariant"] = to_json(rk ? lg.det() : Integer(1));
  c.evidence["ell_coinvariant"] = len;
  c.evidence["ell_bound"] = kLemmaRank - rk;
  c.evidence["clauses"] = {{"negative_definite", neg_def},
                           {"rank_at_most_20", rank_ok},
                           {"root_free", root_free},
                           {"discriminant_action_trivial", disc_trivial},
                           {"ell_bound_holds", ell_ok}};
  c.pass = neg_def && rank_ok && root_free && disc_trivial && ell_ok;
  return c;
}

Certificate ghv_forward(const Lattice& lg, const ForwardOptions& opts) {
  const long rk = static_cast<long>(lg.rank());
  Certificate c{"ghv-forward"};
  c.evidence["rank"] = rk;
  if (rk == 0) {
    c.evidence["mode"] = "trivial";
    c.pass = true;
    return c;
  }
  if (!lg.is_even() || !is_negative_definite(lg))
    throw Error(ErrorKind::Precondition, "lattice must be even and negative definite");
  if (root_count(lg) != 0) throw Error(ErrorKind::Precondition, "lattice contains a (-2)-class");
  const long len = static_cast<long>(ell_of(lg));
  if (rk > 20 || len > kLemmaRank - rk)
    throw Error(ErrorKind::Precondition, "lattice violates the rank or length bound of the standard lemma");
  c.evidence["ell"] = len;
  c.evidence["weak_inequality"] = len <= kLemmaRank - rk;
  c.evidence["strong_inequality"] = len < kLemmaRank - rk;
  Lattice extended = direct_sum(lg, make("A1neg"));
  Verdict v = nikulin_existence(extended, {1, 25});
  c.evidence["with_a1_into_gamma"] = to_json(v);
  c.evidence["into_niemeier"] = verdict_or_error(lg, {0, 24});
  const bool criteria = v.status == VerdictStatus::Guaranteed;

  bool witness = false;
  if (static_cast<std::size_t>(rk) <= opts.search_rank_limit) {
    Json s;
    s["node_cap"] = to_json(Integer(std::to_string(opts.node_cap)));
    try {
      auto found = search_embedding(lg, make("Leech"), {opts.node_cap, true, std::nullopt});
      s["nodes"] = to_json(Integer(std::to_string(found.nodes)));
      if (found.witness) {
        witness = verify_embedding(*found.witness, lg, make("Leech"));
        s["map"] = rows_json(found.witness->map);
        s["verified"] = witness;
      } else {
        s["exhaustive"] = found.exhaustive;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceCap) throw;
      s["stopped"] = "node cap reached";
    }
    c.evidence["leech_search"] = s;
  }
  c.evidence["mode"] = witness ? "witness" : (criteria ? "criteria-level" : "none");
  c.pass = witness || criteria;
  return c;
}

RationalSubspace PeriodSpace::pi() const {
  return {mukai_ptr(), to_rational(vstack(l1, p2))};
}

PeriodSpace find_period_space(const Lattice& ng, const PeriodOptions& opts) {
  require_mukai_sublattice(ng);
  const IntMatrix& gram = mukai_ptr()->gram;
  if (ng.rank() > 20) throw Error(ErrorKind::Precondition, "lattice has rank above 20");
  if (ng.rank() && !is_negative_definite(ng)) throw Error(ErrorKind::Precondition, "lattice must be negative definite");
  const IntMatrix ngb = basis_or_empty(ng, kMukaiRank);
  const IntMatrix c = ngb.rows() ? int_kernel(gram * ngb.transpose()) : IntMatrix::identity(kMukaiRank);
  if (signature(make_lattice(c * gram * c.transpose())).pos != 4)
    throw Error(ErrorKind::Precondition, "orthogonal complement must have four positive directions");
  IntMatrix fixed = rows_of({unit(kMukaiRank, 0), unit(kMukaiRank, 23)}, kMukaiRank);
  if (opts.v) {
    const IntVector& v = *opts.v;
    if (v.size() != kMukaiRank) throw Error(ErrorKind::InvalidInput, "v must have 24 coordinates");
    if (inner(v, gram, v) <= 0) throw Error(ErrorKind::Precondition, "v must have positive square");
    for (std::size_t i = 0; i < ngb.rows(); ++i)
      if (inner(v, gram, ngb.row(i)) != 0) throw Error(ErrorKind::Precondition, "v must be orthogonal to the lattice");
    fixed.append_row(v);
  }
  const IntMatrix majorant = mukai_majorant();
  const IntMatrix c0 = reduce(complement_within(c, gram, fixed), majorant);
  if (c0.rows() < 2) throw Error(ErrorKind::Precondition, "no room for a plane in the K3 part");
  Draws draws(opts.seed);
  PeriodSpace out;
  for (int level = 0; level < opts.levels; ++level) {
    const long bound = opts.bounds.coord_bound << level;
    for (std::uint64_t t = 0; t < opts.trials_per_level; ++t) {
      ++out.trials;
      auto a = draws.positive(c0, gram, bound);
      if (!a) continue;
      auto b = draws.positive(reduce(complement_within(c0, gram, rows_of({*a}, kMukaiRank)), majorant), gram, bound);
      if (!b) continue;
      IntMatrix l1 = integral_basis(saturation(sublattice(mukai_ptr(), rows_of({*a, *b}, kMukaiRank))));
      IntMatrix fix = l1;
      if (opts.v) fix.append_row(*opts.v);
      IntMatrix d = reduce(complement_within(c, gram, fix), majorant);
      std::optional<IntVector> p1 = opts.v ? opts.v : draws.positive(d, gram, bound);
      if (!p1) continue;
      IntMatrix e = reduce(complement_within(d, gram, rows_of({*p1}, kMukaiRank)), majorant);
      auto p2 = draws.positive(e, gram, bound);
      if (!p2) continue;
      out.l1 = l1;
      out.p2 = rows_of({*p1, *p2}, kMukaiRank);
      if (!is_positive_subspace(out.pi())) continue;
      if (!roots_in_complement(out.pi()).empty()) continue;
      out.coord_bound = bound;
      return out;
    }
  }
  throw Error(ErrorKind::NotFoundWithinBounds, "no root-free period space within the search bounds");
}

ConverseResult ghv_converse(const GroupAction& a, const PeriodOptions& opts) {
  Certificate thm = thm1_condition_ii(a);
  if (!thm.pass) throw Error(ErrorKind::Precondition, "invariant lattice has rank below 4");
  auto split = invariant_split(a);
  const Lattice& ng = split.coinvariant;
  const long rk_inv = static_cast<long>(split.invariant.rank());
  ConverseResult r;
  Certificate& c = r.certificate;
  c.kind = "ghv-converse";
  c.evidence["rank_invariant"] = rk_inv;
  c.evidence["rank_coinvariant"] = static_cast<long>(ng.rank());
  c.evidence["coinvariant_root_count"] = static_cast<long>(root_count(ng));
  if (ng.rank()) {
    c.evidence["coinvariant_into_mukai"] = verdict_or_error(ng, {4, 20});
    auto partner = orthogonal_partner_spec(ng, {4, 20});
    c.evidence["partner"] = {{"signature", {partner.signature.pos, partner.signature.neg}},
                             {"order", to_json(partner.form.order())},
                             {"ell", static_cast<long>(ell(partner.form))}};
    c.evidence["invariant_into_e8_plus_u"] = verdict_or_error(split.invariant, {rk_inv - 4, rk_inv + 4});
    c.evidence["discriminant_action_trivial"] = disc_action_is_trivial(a, ng);
  }

  auto emb = embed_coinvariant_in_mukai(ng, split.invariant);
  auto check = check_embedding(emb.map, ng, *mukai_ptr());
  Json e;
  e["map"] = rows_json(emb.map);
  e["gram_matches"] = check.gram_matches;
  e["primitive"] = check.primitive;
  if (ng.rank()) {
    Json parts = Json::array();
    for (const auto& p : emb.roots.invariant_parts) parts.push_back(to_json(p));
    e["root_configuration"] = {{"invariant_parts", parts}, {"colors", emb.roots.colors}};
    e["search_nodes"] = static_cast<long>(emb.nodes);
  }
  c.evidence["embedding"] = e;

  Lattice s;
  s.gram = ng.gram;
  s.basis = to_rational(emb.map);
  s.ambient = mukai_ptr();
  GroupAction ext{*mukai_ptr(), {}};
  if (ng.rank()) {
    GroupAction on_s = restrict_to(a, ng);
    on_s.lattice = s;
    ext = extend_by_identity(on_s);
  } else {
    ext.generators.assign(a.generators.size(), IntMatrix::identity(kMukaiRank));
  }
  validate(ext);

  PeriodSpace period = find_period_space(s, opts);
  const bool fixed = fixes_rows(ext.generators, period.pi().spanning);
  c.evidence["period"] = {{"l1", rows_json(period.l1)},
                          {"p2", rows_json(period.p2)},
                          {"trials", static_cast<long>(period.trials)},
                          {"coord_bound", period.coord_bound},
                          {"fixed_by_group", fixed}};
  Certificate lemma = lemma_standard_check(ext, period.pi());
  c.evidence["lemma"] = lemma.to_json();
  c.pass = check.gram_matches && check.primitive && fixed && lemma.pass;
  r.on_mukai = std::move(ext);
  r.ng_in_mukai = std::move(s);
  r.period = std::move(period);
  return r;
}

Certificate star_check(const Lattice& l) {
  if (l.rank() != 3) throw Error(ErrorKind::Precondition, "condition (*) is about rank-3 lattices");
  if (!l.has_ambient()) throw Error(ErrorKind::Precondition, "lattice must sit inside its context");
  Certificate c{"star"};
  const bool primitive = is_primitive_sublattice(l);
  const bool positive = is_positive_definite(l);
  auto inv = snf(l.gram).invariants();
  c.evidence["gram"] = to_json(l.gram);
  c.evidence["snf"] = to_json(IntVector(inv));
  c.evidence["primitive"] = primitive;
  c.evidence["positive_definite"] = positive;
  if (l.is_even() && l.is_nondegenerate()) c.evidence["ell"] = static_cast<long>(ell_of(l));
  c.pass = primitive && positive && inv[0] == 1;
  if (c.pass) {
    Integer bound = 0;
    for (std::size_t i = 0; i < 3; ++i) bound = std::max(bound, l.gram(i, i));
    for (;; bound *= 2) {
      auto sv = short_vectors(l, bound);
      std::stable_sort(sv.begin(), sv.end(), [](const auto& x, const auto& y) { return x.norm < y.norm; });
      auto it = std::find_if(sv.begin(), sv.end(), [&](const auto& s) { return is_primitive_in_dual(s.v, l); });
      if (it != sv.end()) {
        c.evidence["dual_primitive_vector"] = to_json(it->v);
        c.evidence["dual_primitive_vector_ambient"] = to_json(to_ambient(l, it->v));
        break;
      }
    }
  }
  return c;
}

namespace {

// gcd of the maximal minors of a 3-row matrix is 1, i.e. the rows span a primitive sublattice.
bool has_unit_minor_gcd(const IntMatrix& rows) {
  const std::size_t n = rows.cols();
  Integer g = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const Integer m = rows(0, a) * (rows(1, b) * rows(2, c) - rows(1, c) * rows(2, b)) -
                          rows(0, b) * (rows(1, a) * rows(2, c) - rows(1, c) * rows(2, a)) +
                          rows(0, c) * (rows(1, a) * rows(2, b) - rows(1, b) * rows(2, a));
        if (m == 0) continue;
        g = gcd(g, m);
        if (g == 1) return true;
      }
  return false;
}

// Box vectors with 1 <= norm <= norm_bound in order of l1 weight, then
// lexicographically (one per sign class), at most kStarCandidates of them.
std::vector<IntVector> shell_candidates(const Lattice& ctx, const SearchBounds& b, std::uint64_t& nodes) {
  const std::size_t n = ctx.rank();
  const long c = b.coord_bound;
  std::vector<IntVector> out;
  IntVector v(n, Integer(0));
  std::vector<IntVector> shell;
  std::function<void(std::size_t, long)> fill = [&](std::size_t pos, long left) {
    if (left == 0) {
      if (++nodes > b.cap) throw Error(ErrorKind::ResourceCap, "star search exceeded the node budget");
      const Integer q = inner(v, ctx.gram, v);
      if (q >= 1 && q <= b.norm_bound) shell.push_back(v);
      return;
    }
    if (pos == n || static_cast<long>(n - pos) * c < left) return;
    const bool leading = std::all_of(v.begin(), v.begin() + pos, [](const Integer& x) { return x == 0; });
    for (long x = leading ? 0 : -std::min(c, left); x <= std::min(c, left); ++x) {
      v[pos] = x;
      fill(pos + 1, left - std::abs(x));
    }
    v[pos] = 0;
  };
  for (long w = 1; w <= static_cast<long>(n) * c && out.size() < kStarCandidates; ++w) {
    shell.clear();
    fill(0, w);
    std::sort(shell.begin(), shell.end());
    for (auto& x : shell) {
      if (out.size() == kStarCandidates) break;
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace

std::optional<StarFound> star_search(const Lattice& context, const SearchBounds& bounds) {
  if (!context.is_nondegenerate()) throw Error(ErrorKind::Precondition, "context must be nondegenerate");
  if (signature(context).pos != 4) throw Error(ErrorKind::Precondition, "context must have four positive directions");
  auto ctx = std::make_shared<const Lattice>(context);
  std::uint64_t nodes = 0;
  const auto vs = shell_candidates(context, bounds, nodes);
  const std::size_t n = vs.size();
  std::vector<std::vector<Integer>> ip(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) ip[i][j] = ip[j][i] = inner(vs[i], context.gram, vs[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (++nodes > bounds.cap) throw Error(ErrorKind::ResourceCap, "star search exceeded the node budget");
        // Saturation keeps the rational span, so the triple's Gram decides definiteness.
        const Integer m2 = ip[i][i] * ip[j][j] - ip[i][j] * ip[i][j];
        if (m2 <= 0) continue;
        const std::size_t idx[3] = {i, j, k};
        IntMatrix g3(3, 3);
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b) g3(a, b) = ip[idx[a]][idx[b]];
        if (determinant(g3) <= 0) continue;
        IntMatrix rows = rows_of({vs[i], vs[j], vs[k]}, context.rank());
        Lattice l = has_unit_minor_gcd(rows) ? sublattice(ctx, rows) : saturation(sublattice(ctx, rows));
        Certificate cert = star_check(l);
        if (!cert.pass) continue;
        cert.evidence["bounds"] = to_json(bounds);
        cert.evidence["candidates"] = static_cast<long>(vs.size());
        cert.evidence["basis"] = to_json(integral_basis(l));
        return StarFound{std::move(l), std::move(cert)};
      }
  return std::nullopt;
}

Certificate period_construct(const Lattice& ng, const PeriodOptions& opts) {
  require_mukai_sublattice(ng);
  if (ng.rank() > 20) throw Error(ErrorKind::Precondition, "lattice has rank above 20");
  PeriodSpace ps = find_period_space(ng, opts);
  const IntMatrix& gram = mukai_ptr()->gram;
  Certificate c{"period"};
  c.evidence["l1"] = rows_json(ps.l1);
  c.evidence["l1_gram"] = to_json(IntMatrix(ps.l1 * gram * ps.l1.transpose()));
  c.evidence["p2"] = rows_json(ps.p2);
  c.evidence["p2_gram"] = to_json(IntMatrix(ps.p2 * gram * ps.p2.transpose()));
  c.evidence["complement_root_count"] = static_cast<long>(roots_in_complement(ps.pi()).size());
  c.evidence["trials"] = static_cast<long>(ps.trials);
  c.evidence["coord_bound"] = ps.coord_bound;
  c.evidence["bounds"] = to_json(opts.bounds);
  c.evidence["seed"] = to_json(Integer(std::to_string(opts.seed)));
  if (opts.v) c.evidence["v"] = to_json(*opts.v);

  // A class of positive square in L1-perp inside the K3 part.
  IntMatrix k3 = complement_within(IntMatrix::identity(kMukaiRank), gram,
                                   vstack(rows_of({unit(kMukaiRank, 0), unit(kMukaiRank, 23)}, kMukaiRank), ps.l1));
  auto alpha = positive_vector_in_span(k3, gram);
  if (alpha)
    c.evidence["ample_candidate"] = {{"vector", to_json(*alpha)}, {"square", to_json(inner(*alpha, gram, *alpha))}};
  c.pass = c.evidence["complement_root_count"] == 0 && alpha.has_value();
  return c;
}

bool verify_thm1(const Certificate& c, const GroupAction& a) {
  // Invariant rank as the nullity of the stacked (g - 1).
  const std::size_t n = a.lattice.rank();
  IntMatrix stacked(n, 0);
  for (const auto& g : a.generators) stacked = hstack(stacked, g - IntMatrix::identity(n));
  const long rk_inv = static_cast<long>(n - (stacked.cols() ? rank(stacked) : 0));
  const auto& ev = c.evidence;
  return c.kind == "thm1-ii" && ev.at("rank_invariant") == rk_inv && ev.at("rank_coinvariant") == long(n) - rk_inv &&
         c.pass == (rk_inv >= 4) && ev.at("coinvariant_root_count") == 0;
}

bool verify_lemma(const Certificate& c, const GroupAction& a) {
  auto split = invariant_split(a);
  const Lattice& lg = split.coinvariant;
  const auto& ev = c.evidence;
  const long rk = static_cast<long>(lg.rank());
  const long len = static_cast<long>(ell_of(lg));
  if (c.kind != "lemma" || ev.at("rank_coinvariant") != rk || ev.at("ell_coinvariant") != len) return false;
  const auto& cl = ev.at("clauses");
  return cl.at("rank_at_most_20") == (rk <= 20) && cl.at("ell_bound_holds") == (len <= kLemmaRank - rk) &&
         cl.at("root_free") == (root_count(lg) == 0) && c.pass == (cl.at("negative_definite").get<bool>() &&
                                                                   cl.at("rank_at_most_20").get<bool>() &&
                                                                   cl.at("root_free").get<bool>() &&
                                                                   cl.at("discriminant_action_trivial").get<bool>() &&
                                                                   cl.at("ell_bound_holds").get<bool>());
}

bool verify_converse(const Certificate& c, const GroupAction& a) {
  if (c.kind != "ghv-converse") return false;
  auto split = invariant_split(a);
  const auto& ev = c.evidence;
  IntMatrix map = int_matrix_from_json(ev.at("embedding").at("map"));
  if (map.rows() != split.coinvariant.rank()) return false;
  if (map.rows() && !verify_embedding({map, true}, split.coinvariant, *mukai_ptr())) return false;
  IntMatrix l1 = int_matrix_from_json(ev.at("period").at("l1"));
  IntMatrix p2 = int_matrix_from_json(ev.at("period").at("p2"));
  RationalSubspace pi{mukai_ptr(), to_rational(vstack(l1, p2))};
  if (!is_positive_subspace(pi) || !roots_in_complement(pi).empty()) return false;
  const IntMatrix& gram = mukai_ptr()->gram;
  if (map.rows() && vstack(l1, p2) * gram * map.transpose() != IntMatrix(4, map.rows())) return false;
  for (std::size_t i = 0; i < l1.rows(); ++i)
    if (l1(i, 0) != 0 || l1(i, 23) != 0) return false;
  return ev.at("rank_invariant") == static_cast<long>(split.invariant.rank()) && c.pass == ev.at("lemma").at("pass");
}

bool verify_star(const Certificate& c, const Lattice& l) {
  if (c.kind != "star" || l.rank() != 3) return false;
  // l(A_L) < 3 iff the first invariant factor is 1, i.e. some 1x1 minor is a unit:
  // recomputed as the gcd of all Gram entries.
  Integer g = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), l.gram(i, j).get_mpz_t());
  const bool expect = is_primitive_sublattice(l) && is_positive_definite(l) && g == 1;
  if (c.pass != expect) return false;
  if (!c.pass) return true;
  IntVector v = int_vector_from_json(c.evidence.at("dual_primitive_vector"));
  return is_primitive_in_dual(v, l);
}

bool verify_period(const Certificate& c, const Lattice& ng) {
  if (c.kind != "period") return false;
  const IntMatrix& gram = mukai_ptr()->gram;
  IntMatrix l1 = int_matrix_from_json(c.evidence.at("l1"));
  IntMatrix p2 = int_matrix_from_json(c.evidence.at("p2"));
  if (l1.rows() != 2 || p2.rows() != 2) return false;
  for (std::size_t i = 0; i < 2; ++i)
    if (l1(i, 0) != 0 || l1(i, 23) != 0) return false;
  if (!is_primitive_sublattice(sublattice(mukai_ptr(), l1))) return false;
  RationalSubspace pi{mukai_ptr(), to_rational(vstack(l1, p2))};
  if (!is_positive_subspace(pi)) return false;
  const long complement_roots = static_cast<long>(roots_in_complement(pi).size());
  if (c.evidence.at("complement_root_count") != complement_roots) return false;
  if (c.pass != (complement_roots == 0 && c.evidence.contains("ample_candidate"))) return false;
  if (ng.rank()) {
    IntMatrix b = integral_basis(ng);
    if (vstack(l1, p2) * gram * b.transpose() != IntMatrix(4, b.rows())) return false;
  }
  if (c.evidence.contains("ample_candidate")) {
    IntVector alpha = int_vector_from_json(c.evidence.at("ample_candidate").at("vector"));
    if (alpha[0] != 0 || alpha[23] != 0 || inner(alpha, gram, alpha) <= 0) return false;
    for (std::size_t i = 0; i < 2; ++i)
      if (inner(alpha, gram, l1.row(i)) != 0) return false;
  }
  return true;
}

}  // namespace k3lat
