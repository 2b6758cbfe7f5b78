#include "k3lat/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "k3lat/catalog.hpp"

namespace k3lat {

namespace {

const Integer kExactLimit = Integer(1) << 53;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Lattice with_basis(std::shared_ptr<const Lattice> ambient, RatMatrix basis, std::string name) {
  if (basis.rows() == 0) basis = RatMatrix(0, ambient->rank());
  if (basis.cols() != ambient->rank()) bad("basis rows do not match the ambient rank");
  RatMatrix g = basis * to_rational(ambient->gram) * basis.transpose();
  if (!is_integral(g)) throw Error(ErrorKind::NotIntegral, "sublattice Gram matrix is not integral");
  Lattice s;
  s.gram = to_integer(g);
  s.basis = basis;
  s.ambient = std::move(ambient);
  s.name = std::move(name);
  if (rank(basis) != basis.rows()) throw Error(ErrorKind::DependentSpan, "basis rows are linearly dependent");
  return s;
}

}  // namespace

Json to_json(const Integer& z) {
  if (abs(z) <= kExactLimit) return Json(z.get_si());
  return Json(z.get_str());
}

Json to_json(const Rational& q) { return Json(to_string(q)); }

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const FiniteQuadraticForm& f) {
  Json j;
  j["factors"] = to_json(IntVector(f.factors));
  j["q"] = to_json(f.q);
  j["order"] = to_json(f.order());
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = std::string(to_string(v.status));
  Json reasons = Json::array();
  for (const auto& r : v.reasons) {
    Json n = Json::object();
    for (const auto& [k, x] : r.numbers) n[k] = x;
    reasons.push_back({{"criterion", r.criterion}, {"line", r.line}, {"numbers", n}});
  }
  j["reasons"] = reasons;
  return j;
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long>());
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) bad("not an integer: \"" + s + "\"");
    return z;
  }
  bad("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational, got " + j.dump());
}

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) bad("ragged matrix");
  return IntMatrix::from_rows(rows, cols);
}

RatMatrix rat_matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) bad("expected a row array");
    RatVector v;
    for (const auto& x : r) v.push_back(rational_from_json(x));
    rows.push_back(std::move(v));
  }
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) bad("ragged matrix");
  return RatMatrix::from_rows(rows, cols);
}

Lattice lattice_from_json(const Json& j) {
  if (j.is_string()) return make(j.get<std::string>());
  if (!j.is_object()) bad("lattice document must be an object or a catalog name");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string{};
  if (j.contains("catalog")) {
    Lattice l = make(j.at("catalog").get<std::string>());
    if (!name.empty()) l.name = name;
    return l;
  }
  if (j.contains("basis")) {
    auto ambient = std::make_shared<const Lattice>(lattice_from_json(field(j, "ambient")));
    Lattice s = with_basis(ambient, rat_matrix_from_json(j.at("basis")), name);
    if (j.contains("gram") && int_matrix_from_json(j.at("gram")) != s.gram)
      bad("stated Gram matrix disagrees with basis and ambient");
    return s;
  }
  Lattice l = make_lattice(int_matrix_from_json(field(j, "gram")), name);
  if (l.gram.rows() != l.gram.cols()) bad("Gram matrix is not square");
  if (!is_symmetric(l.gram)) bad("Gram matrix is not symmetric");
  return l;
}

Json lattice_to_json(const Lattice& l) {
  Json j;
  j["gram"] = to_json(l.gram);
  if (!l.name.empty()) j["name"] = l.name;
  if (l.has_ambient()) {
    j["basis"] = is_integral(*l.basis) ? to_json(to_integer(*l.basis)) : to_json(*l.basis);
    j["ambient"] = lattice_to_json(*l.ambient);
  }
  return j;
}

GroupAction action_from_json(const Json& j) {
  GroupAction a{lattice_from_json(field(j, "lattice")), {}};
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) a.generators.push_back(int_matrix_from_json(g));
  const bool on_leech = a.lattice.gram == make("Leech").gram;
  if (j.contains("permutations") || j.contains("perm24") || j.contains("m24")) {
    if (!on_leech) bad("permutation generators need the Leech lattice");
    std::vector<Json> perms;
    if (j.contains("perm24")) perms.push_back(j.at("perm24"));
    if (j.contains("permutations"))
      for (const auto& p : j.at("permutations")) perms.push_back(p);
    for (const auto& p : perms) {
      if (!p.is_array() || p.size() != 24) bad("a permutation lists 24 images");
      Permutation perm{};
      for (std::size_t i = 0; i < 24; ++i) {
        if (!p[i].is_number_integer()) bad("permutation images are integers");
        perm[i] = p[i].get<int>();
      }
      if (!is_permutation(perm)) bad("not a permutation of 0..23");
      a.generators.push_back(perm_isometry_on_leech(perm));
    }
    if (j.contains("m24"))
      for (const auto& label : j.at("m24")) {
        if (!label.is_string()) bad("m24 labels are strings");
        a.generators.push_back(perm_isometry_on_leech(curated_m24_element(label.get<std::string>())));
      }
  }
  validate(a);
  return a;
}

Json action_to_json(const GroupAction& a) {
  Json gens = Json::array();
  for (const auto& g : a.generators) gens.push_back(to_json(g));
  return {{"lattice", lattice_to_json(a.lattice)}, {"generators", gens}};
}

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json parse_json(const std::string& text) {
  std::istringstream in(text);
  return parse_json(in);
}

std::string canonical_dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace k3lat
