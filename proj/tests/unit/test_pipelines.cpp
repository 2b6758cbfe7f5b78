#include "doctest.h"
#include "support.hpp"

#include "k3lat/catalog.hpp"
#include "k3lat/disc_form.hpp"
#include "k3lat/mukai_embedding.hpp"
#include "k3lat/pipelines.hpp"

using namespace k3lat;
using testing_support::gram_of;

namespace {

GroupAction leech_action(const std::vector<std::string>& labels) {
  GroupAction a{make("Leech"), {}};
  for (const auto& l : labels) a.generators.push_back(perm_isometry_on_leech(curated_m24_element(l)));
  return a;
}

GroupAction minus_identity_action() {
  IntMatrix m(24, 24);
  for (std::size_t i = 0; i < 24; ++i) m(i, i) = -1;
  return {make("Leech"), {m}};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

Lattice self_context(const IntMatrix& g) {
  auto ctx = std::make_shared<const Lattice>(make_lattice(g));
  return sublattice(ctx, IntMatrix::identity(g.rows()));
}

}  // namespace

TEST_CASE("invariant rank criterion") {
  auto t = thm1_condition_ii(leech_action({}));
  CHECK(t.pass);
  CHECK(t.evidence["rank_invariant"] == 24);
  CHECK(verify_thm1(t, leech_action({})));

  auto m = thm1_condition_ii(minus_identity_action());
  CHECK(!m.pass);
  CHECK(m.evidence["rank_invariant"] == 0);
  CHECK(m.evidence["note"] == "contains -id");
  CHECK(verify_thm1(m, minus_identity_action()));

  auto i = thm1_condition_ii(leech_action({"1^8 2^8"}));
  CHECK(i.pass);
  CHECK(i.evidence["rank_invariant"] == 16);
  CHECK(verify_thm1(i, leech_action({"1^8 2^8"})));

  auto forged = i;
  forged.evidence["rank_invariant"] = 17;
  CHECK(!verify_thm1(forged, leech_action({"1^8 2^8"})));
  CHECK(kind_of([] { thm1_condition_ii({make("E8neg"), {}}); }) == ErrorKind::Precondition);
}

TEST_CASE("lemma clauses on Leech actions") {
  auto t = lemma_clauses(leech_action({}));
  CHECK(t.pass);
  CHECK(t.evidence["rank_coinvariant"] == 0);
  CHECK(verify_lemma(t, leech_action({})));
  auto i = lemma_clauses(leech_action({"1^8 2^8"}));
  CHECK(i.pass);
  CHECK(i.evidence["rank_coinvariant"] == 8);
  CHECK(i.evidence["ell_coinvariant"].get<long>() <= 16);
  auto m = lemma_clauses(minus_identity_action());
  CHECK(!m.pass);
  CHECK(m.evidence["clauses"]["rank_at_most_20"] == false);
  RationalSubspace pi{std::make_shared<const Lattice>(make("Leech")), RatMatrix(0, 24)};
  CHECK(kind_of([&] { lemma_standard_check(leech_action({}), pi); }) == ErrorKind::Precondition);
}

TEST_CASE("forward direction") {
  auto z = ghv_forward(make_lattice(IntMatrix(0, 0)));
  CHECK(z.pass);
  CHECK(z.evidence["mode"] == "trivial");

  auto f = ghv_forward(make_lattice(gram_of({{-4}})));
  CHECK(f.pass);
  CHECK(f.evidence["mode"] == "witness");

  CHECK(kind_of([] { ghv_forward(make_lattice(gram_of({{-2}}))); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { ghv_forward(make_lattice(gram_of({{4}}))); }) == ErrorKind::Precondition);

  auto lg = coinvariant_lattice(leech_action({"1^8 2^8"}));
  auto c = ghv_forward(make_lattice(lg.gram));
  CHECK(c.pass);
  CHECK(c.evidence["weak_inequality"] == true);
}

TEST_CASE("converse direction needs invariant rank four") {
  // i -> i+1 on GF(23) fixes infinity: two cycles.
  GroupAction a{make("Leech"), {perm_isometry_on_leech(m24_generators()[0])}};
  REQUIRE(invariant_lattice(a).rank() == 2);
  CHECK(kind_of([&] { ghv_converse(a); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { ghv_converse(minus_identity_action()); }) == ErrorKind::Precondition);
}

TEST_CASE("coinvariant lattice of an involution in the Mukai lattice") {
  auto split = invariant_split(leech_action({"1^8 2^8"}));
  auto e = embed_coinvariant_in_mukai(split.coinvariant, split.invariant);
  const IntMatrix mukai = make("Mukai").gram;
  CHECK(transform_gram(e.map, mukai) == split.coinvariant.gram);
  for (const auto& d : snf(e.map).invariants()) CHECK(d == 1);
  CHECK(e.roots.invariant_parts.size() == 8);
}

TEST_CASE("star condition on small lattices") {
  auto a3 = star_check(self_context(gram_of({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})));
  CHECK(a3.pass);
  CHECK(a3.evidence["snf"] == Json({1, 1, 4}));
  auto d = star_check(self_context(gram_of({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})));
  CHECK(!d.pass);
  CHECK(d.evidence["ell"] == 3);

  auto ctx = std::make_shared<const Lattice>(make_lattice(gram_of({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})));
  auto non_prim = sublattice(ctx, gram_of({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  auto np = star_check(non_prim);
  CHECK(!np.pass);
  CHECK(np.evidence["primitive"] == false);
  CHECK(verify_star(np, non_prim));

  auto indefinite = self_context(gram_of({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}}));
  CHECK(!star_check(indefinite).pass);
  CHECK(kind_of([] { star_check(self_context(gram_of({{2, 1}, {1, 2}}))); }) == ErrorKind::Precondition);
}

TEST_CASE("star condition agrees with ranks mod p on a sweep") {
  long checked = 0;
  for (long a = 1; a <= 2; ++a)
    for (long b = 1; b <= 2; ++b)
      for (long c = 1; c <= 2; ++c)
        for (long x = -2; x <= 2; ++x)
          for (long y = -2; y <= 2; ++y)
            for (long z = -2; z <= 2; ++z) {
              IntMatrix g = gram_of({{2 * a, x, y}, {x, 2 * b, z}, {y, z, 2 * c}});
              if (!is_positive_definite(make_lattice(g))) continue;
              auto l = self_context(g);
              auto cert = star_check(l);
              CHECK(cert.pass == (testing_support::ell_by_ranks_mod_p(g) < 3));
              CHECK(verify_star(cert, l));
              ++checked;
            }
  CHECK(checked > 100);
}

TEST_CASE("star search") {
  auto u4 = make_lattice(block_diagonal(block_diagonal(make("U").gram, make("U").gram),
                                        block_diagonal(make("U").gram, make("U").gram)));
  auto found = star_search(u4);
  REQUIRE(found.has_value());
  CHECK(found->certificate.pass);
  CHECK(star_check(found->l).pass);
  CHECK(verify_star(found->certificate, found->l));
  SearchBounds tiny;
  tiny.cap = 1;
  CHECK(kind_of([&] { star_search(u4, tiny); }) == ErrorKind::ResourceCap);
  auto u3 = make_lattice(block_diagonal(make("U").gram, block_diagonal(make("U").gram, make("U").gram)));
  CHECK(kind_of([&] { star_search(u3); }) == ErrorKind::Precondition);
}

TEST_CASE("period construction") {
  auto mukai = std::make_shared<const Lattice>(make("Mukai"));
  auto zero = sublattice(mukai, IntMatrix(0, 24));
  auto c = period_construct(zero);
  CHECK(c.pass);
  CHECK(c.evidence["complement_root_count"] == 0);
  CHECK(verify_period(c, zero));
  auto again = period_construct(zero);
  CHECK(again.to_json() == c.to_json());

  auto forged = c;
  forged.evidence["complement_root_count"] = 1;
  CHECK(!verify_period(forged, zero));

  IntMatrix u(2, 24);
  u(0, 17) = 1;
  u(1, 18) = 1;
  CHECK(kind_of([&] { period_construct(sublattice(mukai, u)); }) == ErrorKind::Precondition);
  PeriodOptions o;
  IntVector v(24, 0);
  v[0] = 1;  // isotropic
  o.v = v;
  CHECK(kind_of([&] { period_construct(zero, o); }) == ErrorKind::Precondition);
}
