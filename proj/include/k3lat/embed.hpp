#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/disc_form.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

enum class VerdictStatus { Guaranteed, Refuted, Unknown };
std::string_view to_string(VerdictStatus s);

struct VerdictReason {
  std::string criterion;
  std::string line;
  std::vector<std::pair<std::string, long>> numbers;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::vector<VerdictReason> reasons;
};

struct SignaturePair {
  long pos = 0;
  long neg = 0;
  bool operator==(const SignaturePair&) const = default;
};

bool exists_even_unimodular(SignaturePair sig);

/// Sufficient and necessary rank/length rules for a primitive embedding of L
/// into the even unimodular lattice of signature `target`. The equality-case
/// refinement (odd p-parts short, A1 form split off at 2) is applied only for
/// target (0, 24).
Verdict nikulin_existence(const Lattice& l, SignaturePair target, A1Sign a1 = A1Sign::Negative);

/// Existence and uniqueness up to isometries of the target when
/// l(A_L) + 2 <= rk(target) - rk(L) and both signature parts leave room.
Verdict nikulin_uniqueness(const Lattice& l, SignaturePair target);

struct PartnerSpec {
  SignaturePair signature;
  FiniteQuadraticForm form;
};
/// Signature and discriminant form any orthogonal complement of L in the
/// unimodular target must have.
PartnerSpec orthogonal_partner_spec(const Lattice& l, SignaturePair target);

struct EmbeddingWitness {
  IntMatrix map;  // rows: images of the source basis in target coordinates
  bool primitive = false;
};

struct EmbeddingSearch {
  std::optional<EmbeddingWitness> witness;
  bool exhaustive = false;  // true when no witness exists at all
  std::uint64_t nodes = 0;
};

struct EmbeddingOptions {
  std::uint64_t node_cap = 10'000'000;
  bool require_primitive = false;  // prune to primitive images only
  /// When set, primitivity is judged for image * frame, i.e. in the lattice
  /// whose coordinates the rows of `frame` (a basis of the target) are given in.
  std::optional<IntMatrix> frame;
};

/// Backtracking search for an isometric embedding of definite L into definite
/// M of the same sign. Throws ResourceCap when the node budget runs out, so a
/// result without witness always means the search space was exhausted.
EmbeddingSearch search_embedding(const Lattice& l, const Lattice& m, const EmbeddingOptions& opts = {});

struct EmbeddingCheck {
  bool gram_matches = false;
  bool primitive = false;
};
EmbeddingCheck check_embedding(const IntMatrix& map, const Lattice& l, const Lattice& m);
/// Gram identity and saturation of the image both hold.
bool verify_embedding(const EmbeddingWitness& w, const Lattice& l, const Lattice& m);

}  // namespace k3lat
