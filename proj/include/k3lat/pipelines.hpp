#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "k3lat/group_action.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

inline constexpr int kCertificateSchemaVersion = 1;

struct Certificate {
  std::string kind;  // thm1-ii | lemma | ghv-forward | ghv-converse | star | period
  bool pass = false;
  Json evidence = Json::object();

  Json to_json() const;  // {"schema_version", "kind", "pass", "evidence"}
};

struct SearchBounds {
  long norm_bound = 12;
  long coord_bound = 3;
  std::uint64_t cap = 10'000'000;
};

Json to_json(const SearchBounds& b);

/// Rank of the invariant lattice of an action on the Leech lattice is >= 4.
Certificate thm1_condition_ii(const GroupAction& a);

/// The four clauses of the standard lemma for an action on the Mukai lattice
/// fixing the positive four-space `pi`. Throws Precondition when `pi` is not
/// positive, not fixed, or its complement contains a root.
Certificate lemma_standard_check(const GroupAction& a, const RationalSubspace& pi);

/// The clauses alone, for any action on a rank-24 lattice (no four-space).
Certificate lemma_clauses(const GroupAction& a);

struct ForwardOptions {
  std::size_t search_rank_limit = 8;
  std::uint64_t node_cap = 10'000'000;
};

/// Criteria for a primitive embedding of a coinvariant-type lattice into the
/// Leech lattice, plus a constructive search for small ranks.
Certificate ghv_forward(const Lattice& lg, const ForwardOptions& opts = {});

/// A positive four-space fixed by an action on the Mukai lattice, written as an
/// integral plane L1 inside the K3 part plus a plane P2, with no roots in its
/// orthogonal complement.
struct PeriodSpace {
  IntMatrix l1;  // 2 rows, Mukai coordinates, r = s = 0
  IntMatrix p2;  // 2 rows, Mukai coordinates
  std::uint64_t trials = 0;
  long coord_bound = 0;  // box the successful trial was drawn from
  RationalSubspace pi() const;
};

struct PeriodOptions {
  std::optional<IntVector> v;  // must lie in P2 when given
  SearchBounds bounds;
  std::uint64_t trials_per_level = 64;
  int levels = 6;  // coordinate box doubles per level
  std::uint64_t seed = 20240601;
};

/// Bounded seeded search for a period space orthogonal to `ng` (a sublattice
/// of the Mukai lattice). Throws NotFoundWithinBounds.
PeriodSpace find_period_space(const Lattice& ng, const PeriodOptions& opts = {});

struct ConverseResult {
  Certificate certificate;
  std::optional<GroupAction> on_mukai;
  std::optional<Lattice> ng_in_mukai;
  std::optional<PeriodSpace> period;
};

/// From an action on the Leech lattice with invariant rank >= 4: embed N_G
/// primitively into the Mukai lattice, extend by the identity, and exhibit a
/// fixed positive four-space whose complement has no roots.
ConverseResult ghv_converse(const GroupAction& a, const PeriodOptions& opts = {});

/// Condition (*) for a rank-3 sublattice L of `context` (L carries context as
/// its ambient): primitive, positive definite, and l(A_L) < 3.
Certificate star_check(const Lattice& l);

struct StarFound {
  Lattice l;
  Certificate certificate;
};
/// First rank-3 lattice in canonical order passing star_check, built from
/// saturated triples of positive box vectors of `context`.
std::optional<StarFound> star_search(const Lattice& context, const SearchBounds& bounds = {});

/// Period construction for a sublattice `ng` of the Mukai lattice.
Certificate period_construct(const Lattice& ng, const PeriodOptions& opts = {});

/// Independent re-derivation of a certificate's numbers from its inputs.
bool verify_thm1(const Certificate& c, const GroupAction& a);
bool verify_lemma(const Certificate& c, const GroupAction& a);
bool verify_converse(const Certificate& c, const GroupAction& a);
bool verify_star(const Certificate& c, const Lattice& l);
bool verify_period(const Certificate& c, const Lattice& ng);

}  // namespace k3lat
