#pragma once

#include <istream>
#include <string>

#include <json.hpp>

#include "k3lat/disc_form.hpp"
#include "k3lat/embed.hpp"
#include "k3lat/group_action.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

/// Integers are JSON numbers up to 2^53 in absolute value and decimal strings
/// beyond; rationals are strings "p/q" (or "p" when integral).
Json to_json(const Integer& z);
Json to_json(const Rational& q);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const FiniteQuadraticForm& f);
Json to_json(const Verdict& v);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
RatMatrix rat_matrix_from_json(const Json& j);

/// Lattice documents: {"gram": [[..]]}, {"catalog": "Leech"}, or a sublattice
/// {"basis": [[..]], "ambient": <lattice document>}; "name" is optional.
/// A bare string is read as a catalog name.
Lattice lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& l);

/// {"lattice": <lattice document>, "generators": [matrices]} or, on the Leech
/// lattice, {"lattice": "Leech", "permutations": [[24 images]]} and
/// {"lattice": "Leech", "m24": ["1^8 2^8"]} for curated elements; a single
/// permutation may also be given as "perm24".
GroupAction action_from_json(const Json& j);
Json action_to_json(const GroupAction& a);

/// Parses JSON text; malformed input raises Error(InvalidInput).
Json parse_json(std::istream& in);
Json parse_json(const std::string& text);

/// Canonical text: sorted keys, no whitespace, trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace k3lat
