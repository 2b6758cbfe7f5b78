#include "doctest.h"
#include "support.hpp"

#include "k3lat/catalog.hpp"
#include "k3lat/json_io.hpp"

using namespace k3lat;
using testing_support::gram_of;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("integers switch to strings beyond 2^53") {
  const Integer limit = Integer(1) << 53;
  CHECK(to_json(limit).is_number_integer());
  CHECK(to_json(Integer(-limit)).is_number_integer());
  CHECK(to_json(Integer(limit + 1)) == Json("9007199254740993"));
  CHECK(integer_from_json(Json("9007199254740993")) == limit + 1);
  CHECK(integer_from_json(Json(-5)) == -5);
  CHECK(integer_from_json(Json(18446744073709551615ul)) == Integer("18446744073709551615"));
  CHECK(kind_of([] { integer_from_json(Json("12a")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { integer_from_json(Json(1.5)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("rationals") {
  CHECK(to_json(Rational(-3, 4)) == Json("-3/4"));
  CHECK(to_json(Rational(2)) == Json("2"));
  CHECK(rational_from_json(Json("6/8")) == Rational(3, 4));
  CHECK(rational_from_json(Json(7)) == 7);
}

TEST_CASE("lattice documents") {
  auto l = lattice_from_json(parse_json(R"({"gram": [[-2, 1], [1, -2]], "name": "A2neg"})"));
  CHECK(l.gram == gram_of({{-2, 1}, {1, -2}}));
  CHECK(l.name == "A2neg");
  CHECK(lattice_from_json(Json("Leech")).gram == make("Leech").gram);
  CHECK(lattice_from_json(parse_json(R"({"catalog": "E8neg"})")).gram == make("E8neg").gram);

  auto s = lattice_from_json(parse_json(R"({"basis": [[1, 1]], "ambient": {"gram": [[-2, 0], [0, -2]]}})"));
  CHECK(s.gram == gram_of({{-4}}));
  REQUIRE(s.has_ambient());
  auto back = lattice_from_json(lattice_to_json(s));
  CHECK(back.gram == s.gram);
  CHECK(*back.basis == *s.basis);
  CHECK(back.ambient->gram == s.ambient->gram);

  auto empty = lattice_from_json(parse_json(R"({"basis": [], "ambient": "Mukai"})"));
  CHECK(empty.rank() == 0);

  CHECK(kind_of([] { lattice_from_json(parse_json(R"({"gram": [[0, 1], [2, 0]]})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { lattice_from_json(parse_json(R"({"gram": [[0, 1], [1]]})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { lattice_from_json(parse_json(R"({"grm": []})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { lattice_from_json(parse_json(R"({"catalog": "Nope"})")); }) == ErrorKind::UnknownName);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"basis": [[1, 0], [2, 0]], "ambient": {"gram": [[2, 0], [0, 2]]}})"));
        }) == ErrorKind::DependentSpan);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"basis": [["1/2", 0]], "ambient": {"gram": [[2, 0], [0, 2]]}})"));
        }) == ErrorKind::NotIntegral);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"basis": [[1, 0]], "gram": [[4]], "ambient": {"gram": [[2, 0], [0, 2]]}})"));
        }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_json("{\"gram\": [[1, 2]"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("action documents") {
  auto a = action_from_json(parse_json(R"({"lattice": "Leech", "m24": ["1^8 2^8"]})"));
  REQUIRE(a.generators.size() == 1);
  CHECK(a.generators[0] == perm_isometry_on_leech(curated_m24_element("1^8 2^8")));

  Json perm = Json::array();
  for (int x : curated_m24_element("1^6 3^6")) perm.push_back(x);
  auto b = action_from_json({{"lattice", "Leech"}, {"perm24", perm}});
  CHECK(b.generators[0] == perm_isometry_on_leech(curated_m24_element("1^6 3^6")));
  auto c = action_from_json({{"lattice", "Leech"}, {"permutations", {perm, perm}}});
  CHECK(c.generators.size() == 2);

  auto round = action_from_json(action_to_json(a));
  CHECK(round.generators == a.generators);
  CHECK(round.lattice.gram == a.lattice.gram);

  auto g = action_from_json(parse_json(R"({"lattice": {"gram": [[-2, 0], [0, -2]]}, "generators": [[[0, 1], [1, 0]]]})"));
  CHECK(g.generators[0] == gram_of({{0, 1}, {1, 0}}));

  CHECK(kind_of([] { action_from_json(parse_json(R"({"lattice": "Leech", "perm24": [0, 1, 2]})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { action_from_json(parse_json(R"({"lattice": "E8neg", "m24": ["1^8 2^8"]})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          action_from_json(parse_json(R"({"lattice": {"gram": [[-2, 0], [0, -2]]}, "generators": [[[1, 1], [0, 1]]]})"));
        }) == ErrorKind::InvalidInput);
  Json swapped = perm;
  std::swap(swapped[0], swapped[1]);
  CHECK(kind_of([&] { action_from_json({{"lattice", "Leech"}, {"perm24", swapped}}); }) ==
        ErrorKind::NotCodeAutomorphism);
}

TEST_CASE("canonical dump sorts keys") {
  Json j = parse_json(R"({"b": 1, "a": {"d": [1, 2], "c": null}})");
  CHECK(canonical_dump(j) == "{\"a\":{\"c\":null,\"d\":[1,2]},\"b\":1}\n");
}
