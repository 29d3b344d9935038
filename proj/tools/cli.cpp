#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <map>
#include <optional>

#include "cds/error.hpp"
#include "cds/report.hpp"
#include "cds/verify.hpp"

namespace cds::cli {

namespace {

struct Options {
  std::vector<std::string> files;
  std::size_t max_elements = FreeAlgebraCaps{}.max_elements;
  std::size_t max_width = FreeAlgebraCaps{}.max_width;
  bool timings = false;

  std::string variant = "j";
  std::size_t m = 1;
  std::size_t k_max = 12;
  std::size_t budget = kDefaultRelationBudget;
  std::string alpha = "congruence";

  std::string scheme = "jonsson";
  std::size_t max_len = 12;

  std::size_t n = 2;
  bool provenance = false;

  std::string identity;
  std::string kind = "direct";

  std::string theorem = "all";
  std::string corpus = CDS_CORPUS_DIR;

  FreeAlgebraCaps caps() const { return {max_elements, max_width}; }
};

std::vector<FiniteAlgebra> load(const std::vector<std::string>& files) {
  if (files.empty()) throw InputError("at least one algebra file is required");
  std::vector<FiniteAlgebra> out;
  for (const auto& f : files) out.push_back(load_algebra(f));
  return out;
}

std::vector<std::string> names(const std::vector<FiniteAlgebra>& bases) {
  std::vector<std::string> out;
  for (const auto& b : bases) out.push_back(b.name());
  return out;
}

AlphaKind parse_alpha(const std::string& s) {
  if (s == "congruence") return AlphaKind::Congruence;
  if (s == "tolerance") return AlphaKind::Tolerance;
  throw InputError("unknown alpha kind '" + s + "'");
}

int spectrum_exit(const SpectrumResult& r) { return r.value ? kOk : kCapExceeded; }

int cmd_spectrum(const Options& o, Json& j) {
  auto bases = load(o.files);
  SpectrumResult r;
  if (o.variant == "j" || o.variant == "jconv") {
    r = jonsson_level(bases, o.m, o.k_max, o.variant == "jconv", o.caps());
  } else if (o.variant == "jr" || o.variant == "jrconv") {
    if (bases.size() != 1) throw InputError("relational variants take exactly one algebra");
    r = relational_level(bases[0], o.m, o.k_max, parse_alpha(o.alpha), o.budget,
                         o.variant == "jrconv");
  } else if (o.variant == "day") {
    r = day_function(bases, o.m, o.k_max, o.caps());
  } else if (o.variant == "tschantz") {
    r = tschantz_function(bases, o.m, o.k_max, o.caps());
  } else {
    throw InputError("unknown variant '" + o.variant + "'");
  }
  j = to_json(r, names(bases), o.caps());
  return spectrum_exit(r);
}

TermScheme parse_scheme(const std::string& s) {
  if (s == "jonsson") return TermScheme::Jonsson;
  if (s == "directed") return TermScheme::Directed;
  if (s == "gumm") return TermScheme::Gumm;
  if (s == "pj") return TermScheme::PJ;
  throw InputError("unknown scheme '" + s + "'");
}

int cmd_terms(const Options& o, Json& j) {
  auto bases = load(o.files);
  TermChain c = find_terms(bases, parse_scheme(o.scheme), o.max_len, o.caps());
  j = to_json(c, names(bases), o.caps());
  return c.terms ? kOk : kCapExceeded;
}

int cmd_free(const Options& o, Json& j) {
  auto bases = load(o.files);
  FreeAlgebra f = FreeAlgebra::build(bases, o.n, o.caps());
  j = Json{{"algebras", names(bases)}, {"generators", o.n}, {"elements", f.size()},
           {"width", f.width()}, {"caps", to_json(o.caps())}};
  if (o.provenance) {
    Json prov = Json::array();
    for (std::size_t e = 0; e < f.size(); ++e) {
      const Provenance& p = f.provenance(e);
      Json row{{"element", e}};
      if (p.is_seed()) {
        row["generator"] = p.seed;
      } else {
        row["op"] = f.signature()[p.op].name;
        row["children"] = p.operands;
      }
      row["term"] = f.element_term(e).to_string();
      prov.push_back(row);
    }
    j["provenance"] = prov;
  }
  return kOk;
}

int cmd_congruences(const Options& o, Json& j) {
  auto bases = load(o.files);
  Json algs = Json::array();
  for (const auto& a : bases) {
    Json cons = Json::array();
    for (const auto& c : all_congruences(a)) cons.push_back(c.to_string());
    algs.push_back(Json{{"algebra", a.name()}, {"size", a.size()}, {"count", cons.size()},
                        {"congruences", cons}});
  }
  j = Json{{"algebras", algs}};
  return kOk;
}

int cmd_check(const Options& o, Json& j) {
  auto bases = load(o.files);
  InclusionScheme s = parse_inclusion(o.identity);
  IdentityCheck ic = check_identity_generic(bases, s, o.caps());
  j = Json{{"algebras", names(bases)}, {"identity", s.to_string()}, {"holds", ic.holds},
           {"free_algebra", Json{{"generators", ic.algebra->generators()},
                                 {"elements", ic.algebra->size()},
                                 {"complete", ic.algebra->is_complete()}}}};
  if (ic.holds) {
    Json path = Json::array();
    for (auto e : ic.path) path.push_back(ic.algebra->element_term(e).to_string());
    j["path"] = path;
  } else {
    Instantiation inst = instantiate(s);
    Counterexample c;
    c.algebra = "F(" + std::to_string(inst.generators) + ")";
    c.size = ic.algebra->size();
    for (const auto& [v, p] : inst.partitions)
      c.relations.emplace(v, ic.algebra->generator_kernel(p).to_relation());
    c.lhs = s.lhs().to_string();
    c.rhs = s.rhs.to_string();
    c.a = ic.algebra->generator(0);
    c.b = ic.algebra->generator(inst.generators - 1);
    j["counterexample"] = to_json(c);
  }
  j["caps"] = to_json(o.caps());
  return ic.holds ? kOk : kPropertyFailed;
}

int cmd_product(const Options& o, std::ostream& out) {
  auto bases = load(o.files);
  if (bases.size() != 2) throw InputError("product takes exactly two algebras");
  if (o.kind == "direct")
    out << serialize_algebra(direct_product(bases[0], bases[1]));
  else if (o.kind == "nonindexed")
    out << serialize_algebra(nonindexed_product(bases[0], bases[1]));
  else
    throw InputError("unknown product kind '" + o.kind + "'");
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyConfig cfg;
  cfg.caps = o.caps();
  cfg.k_max = o.k_max;
  cfg.budget = o.budget;
  std::vector<Variety> corpus;
  if (o.files.empty()) {
    corpus = load_corpus(o.corpus);
  } else {
    for (const auto& a : load(o.files)) corpus.push_back({a.name(), {a}});
  }
  SpectrumCache cache(cfg);
  auto start = std::chrono::steady_clock::now();
  std::vector<TheoremReport> reports = verify_all(corpus, cache, o.theorem);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  int code = kOk;
  std::map<std::string, std::size_t> counts;
  err << std::left << std::setw(20) << "theorem" << std::setw(42) << "inputs" << std::setw(16)
      << "status"
      << "level\n";
  for (const auto& r : reports) {
    Json j = to_json(r, cfg);
    out << j.dump() << "\n";
    std::string inputs = r.inputs.contains("algebras") ? r.inputs["algebras"].dump()
                                                       : r.inputs.value("algebra", "");
    for (const char* p : {"m", "l", "alpha"})
      if (r.inputs.contains(p)) inputs += std::string(" ") + p + "=" + r.inputs[p].dump();
    err << std::setw(20) << r.theorem << std::setw(42) << inputs << std::setw(16)
        << to_string(r.status) << r.level << "\n";
    ++counts[to_string(r.status)];
    if (r.status == ReportStatus::Fail) code = kPropertyFailed;
    if (r.status == ReportStatus::BudgetExceeded && code == kOk) code = kCapExceeded;
  }
  err << reports.size() << " reports:";
  for (const auto& [k, v] : counts) err << " " << k << "=" << v;
  err << "\n";
  if (o.timings) err << "elapsed_ms " << ms << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Congruence distributivity spectra of finitely generated varieties"};
  app.require_subcommand(1);
  app.add_option("--max-elements", o.max_elements, "free algebra element cap");
  app.add_option("--max-width", o.max_width, "free algebra coordinate cap");
  app.add_flag("--timings", o.timings, "report elapsed milliseconds");

  auto files = [&](CLI::App* c) { c->add_option("files", o.files, "algebra files (.alg)"); };

  auto* spectrum = app.add_subcommand("spectrum", "distributivity spectrum values");
  spectrum->add_option("--variant", o.variant)
      ->check(CLI::IsMember({"j", "jconv", "jr", "jrconv", "day", "tschantz"}));
  spectrum->add_option("--m", o.m)->check(CLI::PositiveNumber);
  spectrum->add_option("--k-max", o.k_max);
  spectrum->add_option("--budget", o.budget);
  spectrum->add_option("--alpha", o.alpha)->check(CLI::IsMember({"congruence", "tolerance"}));
  files(spectrum);

  auto* terms = app.add_subcommand("terms", "shortest term chains in F(3)");
  terms->add_option("--scheme", o.scheme)
      ->check(CLI::IsMember({"jonsson", "directed", "gumm", "pj"}));
  terms->add_option("--max-len", o.max_len);
  files(terms);

  auto* free = app.add_subcommand("free-algebra", "free algebra of the generated variety");
  free->add_option("--n", o.n);
  free->add_flag("--provenance", o.provenance);
  files(free);

  auto* cons = app.add_subcommand("congruences", "congruence lattices");
  files(cons);

  auto* check = app.add_subcommand("check", "decide a congruence inclusion");
  check->add_option("--identity", o.identity)->required();
  files(check);

  auto* product = app.add_subcommand("product", "direct or non-indexed product");
  product->add_option("--kind", o.kind)->check(CLI::IsMember({"direct", "nonindexed"}));
  files(product);

  auto* verify = app.add_subcommand("verify", "theorem checks over the corpus");
  verify->add_option("theorem", o.theorem, "theorem id or 'all'");
  verify->add_option("--corpus", o.corpus, "directory of .alg files");
  verify->add_option("--budget", o.budget);
  verify->add_option("--k-max", o.k_max);
  verify->add_option("--files", o.files, "algebra files instead of the corpus");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(o, out, err);
    if (*product) return cmd_product(o, out);
    Json j;
    int code = kOk;
    auto start = std::chrono::steady_clock::now();
    if (*spectrum)
      code = cmd_spectrum(o, j);
    else if (*terms)
      code = cmd_terms(o, j);
    else if (*free)
      code = cmd_free(o, j);
    else if (*cons)
      code = cmd_congruences(o, j);
    else if (*check)
      code = cmd_check(o, j);
    if (o.timings)
      j["timing_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    out << j.dump() << "\n";
    return code;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kPropertyFailed;
  }
}

}  // namespace cds::cli
