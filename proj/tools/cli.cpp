#include "cli.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "k3lat/catalog.hpp"
#include "k3lat/disc_form.hpp"
#include "k3lat/embed.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/group_action.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/parallel.hpp"
#include "k3lat/pipelines.hpp"
#include "k3lat/version.hpp"

namespace k3lat {

namespace {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  Json operator()(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw Error(ErrorKind::InvalidInput, "standard input can be read only once");
      stdin_used_ = true;
      return parse_json(in_);
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    return parse_json(f);
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

Json big(std::uint64_t x) { return to_json(Integer(std::to_string(x))); }

Json signature_json(const Signature& s) {
  return {{"pos", static_cast<long>(s.pos)}, {"neg", static_cast<long>(s.neg)}, {"zero", static_cast<long>(s.zero)}};
}

// Gram and basis of a sublattice, without repeating the ambient.
Json sublattice_json(const Lattice& l) {
  Json j;
  j["gram"] = to_json(l.gram);
  j["rank"] = static_cast<long>(l.rank());
  if (l.has_ambient()) j["basis"] = to_json(integral_basis(l));
  return j;
}

Json disc_json(const FiniteQuadraticForm& f) {
  Json j;
  j["form"] = to_json(f);
  j["ell"] = static_cast<long>(ell(f));
  Json lp = Json::object();
  for (const auto& p : primes_dividing(f)) lp[p.get_str()] = static_cast<long>(ell_p(f, p));
  j["ell_p"] = lp;
  return j;
}

SignaturePair parse_target(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidInput, "target must be P,N");
  try {
    std::size_t used = 0;
    const long p = std::stol(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(s);
    const std::string rest = s.substr(comma + 1);
    const long n = std::stol(rest, &used);
    if (used != rest.size() || p < 0 || n < 0) throw std::invalid_argument(s);
    return {p, n};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "target must be two nonnegative integers P,N");
  }
}

IntVector parse_vector(const std::string& s) {
  std::string text = s;
  if (text.empty() || text.front() != '[') text = "[" + text + "]";
  return int_vector_from_json(parse_json(text));
}

// L given by a basis in the coordinates of `context`.
Lattice in_context(Json doc, const Json& context_doc) {
  if (doc.is_object() && doc.contains("basis") && !doc.contains("ambient")) doc["ambient"] = context_doc;
  Lattice l = lattice_from_json(doc);
  const Lattice ctx = lattice_from_json(context_doc);
  if (!l.has_ambient() || l.ambient->gram != ctx.gram)
    throw Error(ErrorKind::InvalidInput, "lattice must be given by a basis in the context lattice");
  return l;
}

struct Outcome {
  Json report;
  int code = kExitPass;
};

Outcome certificate_outcome(const Certificate& c, Json bounds) {
  Json r = c.to_json();
  r["bounds"] = std::move(bounds);
  return {r, c.pass ? kExitPass : kExitFail};
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceCap:
      return kExitCap;
    case ErrorKind::NotFoundWithinBounds:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

void emit(std::ostream& out, Json report) {
  report["version"] = kVersion;
  out << canonical_dump(report);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice computations for symmetries of K3 categories", "k3lat"};
  app.fallthrough();
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware default)");
  app.set_version_flag("--version", kVersion);

  Reader read(in);
  std::function<Outcome()> action;
  SearchBounds bounds;
  std::uint64_t cap = kDefaultNodeCap;

  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--norm-bound", bounds.norm_bound, "largest norm of box vectors")->check(CLI::PositiveNumber);
    sub->add_option("--coord-bound", bounds.coord_bound, "coordinate box half-width")->check(CLI::PositiveNumber);
    sub->add_option("--cap", bounds.cap, "search node budget")->check(CLI::PositiveNumber);
  };

  // lat
  auto* lat = app.add_subcommand("lat", "single-lattice reports");
  lat->require_subcommand(1);
  std::string file, file2;

  auto* info = lat->add_subcommand("info", "rank, signature, parity, determinant, discriminant");
  info->add_option("FILE", file, "lattice document or -")->required();
  info->callback([&] {
    action = [&] {
      Lattice l = lattice_from_json(read(file));
      Json r;
      r["rank"] = static_cast<long>(l.rank());
      r["signature"] = signature_json(signature(l));
      r["even"] = l.is_even();
      r["det"] = to_json(l.rank() ? l.det() : Integer(1));
      r["disc"] = l.rank() && l.is_even() && l.is_nondegenerate() ? disc_json(disc_form(l)) : Json(nullptr);
      r["bounds"] = Json::object();
      return Outcome{r};
    };
  });

  bool count_only = false;
  auto* rts = lat->add_subcommand("roots", "vectors of norm -2 of a definite lattice");
  rts->add_option("FILE", file, "lattice document or -")->required();
  rts->add_flag("--count-only", count_only, "report only the number of sign classes");
  rts->add_option("--cap", cap, "enumeration node budget")->check(CLI::PositiveNumber);
  rts->callback([&] {
    action = [&] {
      Lattice l = lattice_from_json(read(file));
      std::vector<IntVector> found;
      if (l.rank() > 0 && !is_positive_definite(l)) {
        if (!is_negative_definite(l)) throw Error(ErrorKind::Precondition, "roots are enumerated for definite lattices");
        found = roots(l, cap);
      }
      Json r;
      r["count"] = static_cast<long>(found.size());
      if (!count_only) {
        Json a = Json::array();
        for (const auto& v : found) a.push_back(to_json(v));
        r["roots"] = a;
      }
      r["bounds"] = {{"node_cap", big(cap)}};
      return Outcome{r};
    };
  });

  auto* disc = lat->add_subcommand("disc", "discriminant form of an even nondegenerate lattice");
  disc->add_option("FILE", file, "lattice document or -")->required();
  disc->callback([&] {
    action = [&] {
      Lattice l = lattice_from_json(read(file));
      if (l.rank() == 0 || !l.is_nondegenerate()) throw Error(ErrorKind::Precondition, "lattice must be nondegenerate");
      FiniteQuadraticForm f = disc_form(l);
      Json r = disc_json(f);
      auto s = signature(l);
      r["signature_mod8"] = signature_mod8(f);
      r["lattice_signature_mod8"] = ((static_cast<long>(s.pos) - static_cast<long>(s.neg)) % 8 + 8) % 8;
      r["bounds"] = {{"gauss_sum_cap", big(kGaussSumCap)}};
      return Outcome{r};
    };
  });

  // catalog
  std::string name;
  auto* cat = app.add_subcommand("catalog", "catalog lattices, the Golay code and M24 generators");
  cat->add_option("NAME", name, "lattice name, golay, or m24")->required();
  cat->callback([&] {
    action = [&] {
      std::string key = name;
      for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      Json r;
      if (key == "golay") {
        Json rows = Json::array();
        for (auto w : golay().generator) rows.push_back(to_hex(w));
        const auto wd = weight_distribution(golay());
        Json dist = Json::object();
        for (std::size_t w = 0; w < wd.size(); ++w)
          if (wd[w]) dist[std::to_string(w)] = static_cast<long>(wd[w]);
        r = {{"name", "Golay"}, {"generator", rows}, {"weight_distribution", dist}};
      } else if (key == "m24") {
        Json gens = Json::array();
        for (const auto& p : m24_generators()) gens.push_back(p);
        Json curated = Json::object();
        for (const auto& label : curated_m24_labels()) curated[label] = curated_m24_element(label);
        r = {{"name", "M24"}, {"generators", gens}, {"curated", curated}};
      } else {
        r = lattice_to_json(make(name));
      }
      r["bounds"] = Json::object();
      return Outcome{r};
    };
  });

  // grp
  auto* grp = app.add_subcommand("grp", "group actions");
  grp->require_subcommand(1);
  bool lemma = false;
  auto* inv = grp->add_subcommand("invariant", "invariant and coinvariant lattices");
  inv->add_option("FILE", file, "action document or -")->required();
  inv->add_flag("--lemma", lemma, "also check the lemma clauses on the coinvariant lattice");
  inv->callback([&] {
    action = [&] {
      GroupAction a = action_from_json(read(file));
      auto split = invariant_split(a);
      const Lattice& lg = split.coinvariant;
      Json r;
      r["invariant"] = sublattice_json(split.invariant);
      r["coinvariant"] = sublattice_json(lg);
      r["disc_action_trivial"] =
          lg.rank() == 0 ? Json(true) : (lg.is_nondegenerate() ? Json(disc_action_is_trivial(a, lg)) : Json(nullptr));
      r["bounds"] = Json::object();
      int code = kExitPass;
      if (lemma) {
        Certificate c = lemma_clauses(a);
        r["lemma"] = c.to_json();
        code = c.pass ? kExitPass : kExitFail;
      }
      return Outcome{r, code};
    };
  });

  // embed
  auto* emb = app.add_subcommand("embed", "primitive embeddings");
  emb->require_subcommand(1);
  std::string target, a1 = "neg";
  auto* chk = emb->add_subcommand("check", "existence and uniqueness criteria for an even unimodular target");
  chk->add_option("LAT", file, "lattice document or -")->required();
  chk->add_option("--target", target, "target signature P,N")->required();
  chk->add_option("--a1-sign", a1, "sign of A1 in the split test")->check(CLI::IsMember({"neg", "pos"}));
  chk->callback([&] {
    action = [&] {
      Lattice l = lattice_from_json(read(file));
      const SignaturePair t = parse_target(target);
      Json r;
      const Verdict ex = nikulin_existence(l, t, a1 == "pos" ? A1Sign::Positive : A1Sign::Negative);
      r["existence"] = to_json(ex);
      try {
        r["uniqueness"] = to_json(nikulin_uniqueness(l, t));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Precondition) throw;
        r["uniqueness"] = {{"status", "not-applicable"}, {"reason", e.what()}};
      }
      try {
        PartnerSpec ps = orthogonal_partner_spec(l, t);
        r["partner"] = {{"signature", {{"pos", ps.signature.pos}, {"neg", ps.signature.neg}}},
                        {"form", to_json(ps.form)}};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Precondition) throw;
        r["partner"] = nullptr;
      }
      r["target"] = {{"pos", t.pos}, {"neg", t.neg}};
      r["bounds"] = {{"split_cap", big(kSplitCap)}, {"iso_cap", big(kIsoCap)}};
      return Outcome{r, ex.status == VerdictStatus::Guaranteed ? kExitPass : kExitFail};
    };
  });

  bool primitive = false;
  std::uint64_t search_cap = 10'000'000;
  auto* srch = emb->add_subcommand("search", "backtracking search for an embedding of SRC into DST");
  srch->add_option("SRC", file, "lattice document or -")->required();
  srch->add_option("DST", file2, "lattice document or -")->required();
  srch->add_option("--cap", search_cap, "search node budget")->check(CLI::PositiveNumber);
  srch->add_flag("--primitive", primitive, "only primitive images");
  srch->callback([&] {
    action = [&] {
      Lattice src = lattice_from_json(read(file));
      Lattice dst = lattice_from_json(read(file2));
      EmbeddingOptions o;
      o.node_cap = search_cap;
      o.require_primitive = primitive;
      EmbeddingSearch s = search_embedding(src, dst, o);
      Json r;
      r["found"] = s.witness.has_value();
      r["exhaustive"] = s.exhaustive;
      r["nodes"] = big(s.nodes);
      if (s.witness)
        r["witness"] = {{"map", to_json(s.witness->map)},
                        {"primitive", s.witness->primitive},
                        {"verified", verify_embedding(*s.witness, src, dst)}};
      r["bounds"] = {{"node_cap", big(search_cap)}, {"require_primitive", primitive}};
      return Outcome{r, s.witness ? kExitPass : kExitFail};
    };
  });

  // thm1
  auto* thm = app.add_subcommand("thm1", "invariant rank criterion for actions on the Leech lattice");
  thm->require_subcommand(1);
  auto* thmc = thm->add_subcommand("check", "rank of the invariant lattice is at least four");
  thmc->add_option("ACTION", file, "action document or -")->required();
  thmc->callback([&] {
    action = [&] { return certificate_outcome(thm1_condition_ii(action_from_json(read(file))), {{"closure_cap", big(kClosureCap)}}); };
  });

  // ghv
  auto* ghv = app.add_subcommand("ghv", "Leech-side and Mukai-side directions");
  ghv->require_subcommand(1);
  ForwardOptions fwd;
  auto* fw = ghv->add_subcommand("forward", "embedding criteria for a coinvariant-type lattice into the Leech lattice");
  fw->add_option("LG", file, "lattice document or -")->required();
  fw->add_option("--search-rank-limit", fwd.search_rank_limit, "largest rank searched constructively");
  fw->add_option("--cap", fwd.node_cap, "search node budget")->check(CLI::PositiveNumber);
  fw->callback([&] {
    action = [&] {
      Certificate c = ghv_forward(lattice_from_json(read(file)), fwd);
      return certificate_outcome(c, {{"search_rank_limit", static_cast<long>(fwd.search_rank_limit)},
                                     {"node_cap", big(fwd.node_cap)}});
    };
  });

  PeriodOptions popts;
  std::string vtext;
  auto add_period = [&](CLI::App* sub) {
    add_bounds(sub);
    sub->add_option("--levels", popts.levels, "coordinate box doublings")->check(CLI::PositiveNumber);
    sub->add_option("--trials", popts.trials_per_level, "draws per level")->check(CLI::PositiveNumber);
    sub->add_option("--seed", popts.seed, "random seed");
  };
  auto period_bounds = [&] {
    Json b = to_json(popts.bounds);
    b["levels"] = popts.levels;
    b["trials_per_level"] = big(popts.trials_per_level);
    b["seed"] = big(popts.seed);
    return b;
  };
  auto* cv = ghv->add_subcommand("converse", "embed N_G into the Mukai lattice and find a fixed root-free four-space");
  cv->add_option("ACTION", file, "action document on the Leech lattice or -")->required();
  add_period(cv);
  cv->callback([&] {
    action = [&] {
      popts.bounds = bounds;
      ConverseResult res = ghv_converse(action_from_json(read(file)), popts);
      return certificate_outcome(res.certificate, period_bounds());
    };
  });

  // star
  auto* star = app.add_subcommand("star", "rank-3 lattices with l(A_L) < 3");
  star->require_subcommand(1);
  auto* sc = star->add_subcommand("check", "check L against the condition");
  sc->add_option("L", file, "basis in CONTEXT coordinates, or -")->required();
  sc->add_option("CONTEXT", file2, "context lattice document or -")->required();
  sc->callback([&] {
    action = [&] {
      Json ldoc = read(file);
      Json cdoc = read(file2);
      return certificate_outcome(star_check(in_context(ldoc, cdoc)), Json::object());
    };
  });
  auto* ss = star->add_subcommand("search", "bounded search in CONTEXT");
  ss->add_option("CONTEXT", file, "context lattice document or -")->required();
  add_bounds(ss);
  ss->callback([&] {
    action = [&] {
      auto found = star_search(lattice_from_json(read(file)), bounds);
      Json r;
      r["found"] = found.has_value();
      if (found) {
        r["lattice"] = sublattice_json(found->l);
        r["certificate"] = found->certificate.to_json();
      }
      r["bounds"] = to_json(bounds);
      return Outcome{r, found ? kExitPass : kExitFail};
    };
  });

  // period
  auto* per = app.add_subcommand("period", "period construction");
  per->require_subcommand(1);
  auto* pb = per->add_subcommand("build", "fixed root-free four-space orthogonal to NG in the Mukai lattice");
  pb->add_option("NG", file, "sublattice of the Mukai lattice, or -")->required();
  pb->add_option("--v,--vector", vtext, "vector required in P2 (Mukai coordinates)");
  add_period(pb);
  pb->callback([&] {
    action = [&] {
      popts.bounds = bounds;
      if (!vtext.empty()) popts.v = parse_vector(vtext);
      Json doc = read(file);
      if (doc.is_object() && doc.contains("basis") && !doc.contains("ambient")) doc["ambient"] = "Mukai";
      Certificate c = period_construct(lattice_from_json(doc), popts);
      return certificate_outcome(c, period_bounds());
    };
  });

  std::vector<std::string> argv_store{"k3lat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (threads > 0) set_thread_count(threads);
  try {
    Outcome o = action();
    emit(out, std::move(o.report));
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    emit(out, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    emit(out, {{"error", "InvalidInput"}, {"message", e.what()}});
    return kExitUsage;
  }
}

}  // namespace k3lat
