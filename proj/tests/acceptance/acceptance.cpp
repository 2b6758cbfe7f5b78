// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "k3lat/catalog.hpp"
#include "k3lat/disc_form.hpp"
#include "k3lat/embed.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/group_action.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/parallel.hpp"
#include "k3lat/pipelines.hpp"
#include "support.hpp"

using namespace k3lat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later failures are counted only.
struct Tally {
  Outcome o;
  long failures = 0;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) o.detail = what;
    o.pass = false;
  }
  Outcome done(const std::string& summary) {
    if (o.pass) o.detail = summary;
    else if (failures > 1) o.detail += " (+" + std::to_string(failures - 1) + " more)";
    return o;
  }
};

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

long sig_mod8(const Lattice& l) {
  auto s = signature(l);
  return ((static_cast<long>(s.pos) - static_cast<long>(s.neg)) % 8 + 8) % 8;
}

Outcome catalog_constants() {
  Tally t;
  auto e8 = make("E8neg");
  t.require(roots(e8).size() * 2 == 240, "E8(-1) root count");
  auto wd = weight_distribution(golay());
  std::array<std::uint64_t, 25> want{};
  want[0] = 1, want[8] = 759, want[12] = 2576, want[16] = 759, want[24] = 1;
  t.require(wd == want, "Golay weight distribution");
  auto n = make("NiemeierA1");
  t.require(n.is_even() && abs(n.det()) == 1, "NiemeierA1 even unimodular");
  t.require(roots(n).size() * 2 == 48, "NiemeierA1 root count");
  auto leech = make("Leech");
  t.require(leech.is_even() && abs(leech.det()) == 1, "Leech even unimodular");
  t.require(roots(leech).empty(), "Leech root count");
  return t.done("240 roots; (1,759,2576,759,1); NiemeierA1 48 roots; Leech 0 roots");
}

Outcome leech_minimal_norm() {
  Tally t;
  auto pos = rescale(make("Leech"), -1);
  auto sv = short_vectors(pos, Integer(4));
  long norm4 = 0, below = 0;
  for (const auto& s : sv) (s.norm == 4 ? norm4 : below) += 1;
  t.require(below == 0, "vectors of norm below 4");
  t.require(norm4 == 98280, "norm-4 sign classes: " + std::to_string(norm4));
  return t.done("min norm 4, " + std::to_string(norm4) + " sign classes");
}

// Gauss sum by direct summation over the group, independent of gauss_sum().
std::complex<double> direct_gauss_sum(const FiniteQuadraticForm& a) {
  const std::size_t k = a.factors.size();
  std::vector<long> f(k), x(k, 0);
  for (std::size_t i = 0; i < k; ++i) f[i] = a.factors[i].get_si();
  std::complex<double> sum = 0;
  for (;;) {
    IntVector v(x.begin(), x.end());
    const double q = q_value(a, v).get_d();
    sum += std::polar(1.0, std::numbers::pi * q);
    std::size_t i = 0;
    while (i < k && x[i] == f[i] - 1) x[i] = 0, ++i;
    if (i == k) break;
    ++x[i];
  }
  return sum;
}

Outcome milgram_suite() {
  Tally t;
  std::mt19937_64 rng(20240601);
  long tested = 0;
  while (tested < 200) {
    IntMatrix g = testing_support::random_even_gram(rng, 1 + tested % 6, 12);
    const Integer det = determinant(g);
    if (det == 0 || abs(det) > 10000) continue;
    auto l = make_lattice(g);
    auto a = disc_form(l);
    const double root = std::sqrt(Integer(abs(det)).get_d());
    const auto gs = gauss_sum(a);
    const auto direct = direct_gauss_sum(a);
    const auto expected = std::polar(root, std::numbers::pi * static_cast<double>(sig_mod8(l)) / 4);
    t.require(signature_mod8(a) == sig_mod8(l), "signature mod 8 mismatch");
    t.require(std::abs(gs.modulus - root) <= 1e-6 * root, "Gauss sum modulus");
    t.require(std::abs(direct - expected) <= 1e-6 * root, "direct Gauss sum disagrees with the formula");
    ++tested;
  }
  return t.done(std::to_string(tested) + " lattices");
}

Outcome complement_suite() {
  Tally t;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-2, 2);
  const Lattice u = make("U");
  const std::vector<Lattice> ambients{direct_sum(direct_sum(u, u), u), direct_sum(make("E8neg"), u)};
  long tested = 0, with_iso = 0;
  for (const auto& amb : ambients) {
    auto shared = std::make_shared<const Lattice>(amb);
    const std::size_t n = amb.rank();
    long here = 0;
    while (here < 50) {
      const std::size_t k = 1 + rng() % (n - 1);
      IntMatrix rows(k, n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = d(rng);
      if (rank(rows) != k) continue;
      Lattice s = saturation(sublattice(shared, rows));
      if (!s.is_nondegenerate()) continue;
      Lattice c = orth_complement(s);
      auto as = disc_form(s);
      auto ac = disc_form(c);
      t.require(abs(s.det()) == abs(c.det()), "determinants differ");
      t.require(ell(as) == ell(ac), "lengths differ");
      if (as.order() <= 4096) {
        t.require(iso_form_small(as, negate(ac)), "forms not anti-isometric");
        ++with_iso;
      }
      ++here;
    }
    tested += here;
  }
  return t.done(std::to_string(tested) + " sublattices, " + std::to_string(with_iso) + " isometry checks");
}

Outcome lemma_suite() {
  Tally t;
  struct Case {
    std::vector<std::string> labels;
    long rank_coinvariant;
  };
  std::string summary;
  for (const Case& c : {Case{{}, 0}, Case{{"1^8 2^8"}, 8}, Case{{"1^6 3^6"}, 12}}) {
    const std::string name = c.labels.empty() ? "trivial" : c.labels[0];
    auto a = leech_action(c.labels);
    auto r = ghv_converse(a);
    const Json& lemma = r.certificate.evidence["lemma"];
    const Json& ev = lemma["evidence"];
    t.require(r.certificate.pass, name + ": converse certificate fails");
    t.require(lemma["pass"] == true, name + ": lemma fails");
    for (const auto& [clause, ok] : ev["clauses"].items()) t.require(ok == true, name + ": clause " + clause);
    t.require(ev["rank_coinvariant"] == c.rank_coinvariant, name + ": coinvariant rank");
    t.require(ev["ell_coinvariant"].get<long>() <= ev["ell_bound"].get<long>(), name + ": length bound");
    t.require(verify_converse(r.certificate, a), name + ": converse verifier");
    Certificate lc{lemma["kind"], lemma["pass"], ev};
    t.require(r.on_mukai && verify_lemma(lc, *r.on_mukai), name + ": lemma verifier");
    summary += (summary.empty() ? "" : "; ") + name + " rk " + std::to_string(c.rank_coinvariant) + " ell " +
               ev["ell_coinvariant"].dump();
  }
  return t.done(summary);
}

Outcome thm1_suite() {
  Tally t;
  auto check = [&](const GroupAction& a, bool pass, long rk, const std::string& name) {
    auto c = thm1_condition_ii(a);
    t.require(c.pass == pass && c.evidence["rank_invariant"] == rk, name);
    t.require(verify_thm1(c, a), name + " verifier");
  };
  check(leech_action({}), true, 24, "trivial");
  check(minus_identity_action(), false, 0, "-I");
  check(leech_action({"1^8 2^8"}), true, 16, "1^8 2^8");
  return t.done("trivial pass 24; -I fail 0; 1^8 2^8 pass 16");
}

Outcome star_sweep() {
  Tally t;
  long tested = 0, passing = 0;
  for (long a : {2, 4})
    for (long b : {2, 4})
      for (long c : {2, 4})
        for (long x = -4; x <= 4; ++x)
          for (long y = -4; y <= 4; ++y)
            for (long z = -4; z <= 4; ++z) {
              IntMatrix g{{a, x, y}, {x, b, z}, {y, z, c}};
              auto l = make_lattice(g);
              if (!is_positive_definite(l)) continue;
              auto ctx = std::make_shared<const Lattice>(l);
              auto cert = star_check(sublattice(ctx, IntMatrix::identity(3)));
              const bool expect = testing_support::ell_by_ranks_mod_p(g) < 3;
              const auto snf0 = cert.evidence["snf"][0];
              t.require(cert.pass == expect, "disagreement at " + to_json(g).dump());
              t.require((snf0 == 1) == expect, "first invariant factor at " + to_json(g).dump());
              passing += cert.pass;
              ++tested;
            }
  return t.done(std::to_string(tested) + " Gram matrices, " + std::to_string(passing) + " with l < 3");
}

Outcome enumeration_suite() {
  Tally t;
  std::mt19937_64 rng(99);
  long tested = 0, vectors = 0;
  while (tested < 100) {
    const std::size_t n = 1 + tested % 5;
    IntMatrix g = testing_support::random_positive_gram(rng, n, 2);
    const long bound = 1 + static_cast<long>(rng() % 12);
    // keep the naive box small enough to scan
    RatMatrix inv = inverse(to_rational(g));
    double box = 1;
    for (std::size_t i = 0; i < n; ++i) box *= 2 * std::sqrt(bound * inv(i, i).get_d()) + 1;
    if (box > 2e6) continue;
    auto sv = short_vectors(make_lattice(g), Integer(bound));
    std::set<IntVector> got;
    for (const auto& s : sv) got.insert(s.v);
    t.require(got.size() == sv.size(), "duplicate vectors");
    t.require(got == testing_support::naive_short_vectors(g, Integer(bound)), "set mismatch at " + to_json(g).dump());
    vectors += static_cast<long>(got.size());
    ++tested;
  }
  return t.done(std::to_string(tested) + " lattices, " + std::to_string(vectors) + " vectors");
}

Outcome embedding_suite() {
  Tally t;
  const Lattice e8 = make("E8neg");
  std::vector<Lattice> sources{make("A1neg"), make_lattice(IntMatrix{{-2, 1}, {1, -2}}),
                               make_lattice(IntMatrix{{-2, 1, 0, 0}, {1, -2, 1, 1}, {0, 1, -2, 0}, {0, 1, 0, -2}}),
                               make_lattice(IntMatrix{{-4}}), make_lattice(IntMatrix{{-8}})};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-1, 1);
  while (sources.size() < 25) {
    const std::size_t k = 1 + rng() % 3;
    IntMatrix rows(k, 8);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < 8; ++j) rows(i, j) = d(rng);
    if (rank(rows) != k) continue;
    sources.push_back(make_lattice(transform_gram(rows, e8.gram)));
  }
  long witnesses = 0, primitive_runs = 0;
  for (const auto& src : sources) {
    auto plain = search_embedding(src, e8);
    if (plain.witness) {
      ++witnesses;
      auto chk = check_embedding(plain.witness->map, src, e8);
      t.require(chk.gram_matches, "Gram mismatch");
      t.require(chk.primitive == plain.witness->primitive, "primitive flag disagrees");
      t.require(verify_embedding(*plain.witness, src, e8) == plain.witness->primitive, "verifier disagrees");
    } else {
      t.require(plain.exhaustive, "no witness without exhaustion");
    }
    EmbeddingOptions prim;
    prim.require_primitive = true;
    auto p = search_embedding(src, e8, prim);
    if (p.witness) {
      ++witnesses, ++primitive_runs;
      t.require(verify_embedding(*p.witness, src, e8), "primitive witness fails verification");
    }
  }
  auto leech = search_embedding(make("A1neg"), make("Leech"));
  t.require(!leech.witness && leech.exhaustive, "A1(-1) into Leech");
  return t.done(std::to_string(witnesses) + " witnesses (" + std::to_string(primitive_runs) +
                " primitive-only); A1(-1) into Leech: none, exhaustive after " + std::to_string(leech.nodes) +
                " nodes");
}

std::vector<std::vector<std::string>> fixture_commands() {
  const std::string dir = K3LAT_FIXTURES;
  std::ifstream f(dir + "/cli_run.txt");
  if (!f) throw Error(ErrorKind::InvalidInput, "missing cli_run.txt");
  std::vector<std::vector<std::string>> cmds;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w[0] == '@' ? dir + "/" + w.substr(1) : w);
    cmds.push_back(std::move(args));
  }
  return cmds;
}

std::string fixture_run(const std::vector<std::string>& prefix) {
  std::ostringstream all;
  for (auto args : fixture_commands()) {
    args.insert(args.begin(), prefix.begin(), prefix.end());
    std::istringstream in;
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    all << code << " " << out.str();
  }
  return all.str();
}

Outcome determinism() {
  Tally t;
  const std::string a = fixture_run({});
  const std::string b = fixture_run({});
  const std::string one = fixture_run({"--threads", "1"});
  const std::string eight = fixture_run({"--threads", "8"});
  t.require(a == b, "two default runs differ");
  t.require(one == eight, "1 and 8 threads differ");
  t.require(a == one, "default and 1 thread differ");
  return t.done(std::to_string(fixture_commands().size()) + " commands, " + std::to_string(a.size()) +
                " bytes, identical");
}

}  // namespace

int main(int argc, char** argv) {
  bool deep = true;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--no-deep") deep = false;

  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "catalog constants", 10, catalog_constants},
      {2, "Leech minimal norm", 120, leech_minimal_norm},
      {3, "Milgram formula", 30, milgram_suite},
      {4, "complement anti-isometry", 60, complement_suite},
      {5, "lemma clauses", 60, lemma_suite},
      {6, "invariant rank criterion", 0, thm1_suite},
      {7, "rank-3 length criterion", 60, star_sweep},
      {8, "short vector oracle", 60, enumeration_suite},
      {9, "embedding search soundness", 30, embedding_suite},
      {10, "CLI determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (c.id == 2 && !deep) {
      std::cout << "SKIP criterion 2: " << c.name << " (--no-deep)\n";
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_s)) + " s budget";
      o.pass = false;
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " - " << o.detail << " ["
         << secs << " s]";
    std::cout << line.str() << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
