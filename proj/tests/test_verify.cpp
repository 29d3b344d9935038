#include <doctest.h>

#include "cds/error.hpp"
#include "cds/verify.hpp"
#include "common.hpp"
#include "schema_check.hpp"

using namespace cds;
using fixtures::corpus;

namespace {

Variety variety(const char* name) { return {name, {corpus(name)}}; }

VerifyConfig fast() {
  VerifyConfig cfg;
  cfg.m_max = 3;
  return cfg;
}

std::vector<Term> baker_chain() {
  return {Term::var(0), parse_term("f(x0,x1,x2)"), parse_term("f(x2,x0,x1)"), Term::var(2)};
}

}  // namespace

TEST_CASE("members are bases and pairwise products") {
  Variety v{"mix", {corpus("lattice2"), fixtures::chain3()}};
  auto ms = members(v, 16);
  CHECK(ms.size() == 5);
  CHECK(members(v, 4).size() == 3);
}

TEST_CASE("congruence laws on members") {
  const Expr a = Expr::var('a'), b = Expr::var('b'), c = Expr::var('c');
  const Expr lhs = a ^ (b * c);
  const Expr modular = a ^ (b * (a ^ c) * b);
  LawCheck dist = check_congruence_law(fixtures::chain3(), lhs, Expr::compose({a ^ b, a ^ c, a ^ b}), false);
  CHECK_FALSE(dist.counterexample);
  CHECK(dist.cases == 64);

  // The partition lattice of four elements is not modular.
  FiniteAlgebra n5 = fixtures::set4();
  LawCheck mod = check_congruence_law(n5, modular, alternating(a ^ b, a ^ c, 3), false);
  REQUIRE(mod.counterexample);
  CHECK(replay(*mod.counterexample, &n5));
  FiniteAlgebra c3 = fixtures::chain3();
  LawCheck eq = check_congruence_law(c3, b * c, c * b, true, "bc");
  REQUIRE(eq.counterexample);
  CHECK(replay(*eq.counterexample, &c3));
}

TEST_CASE("corollary on products of levels") {
  SpectrumCache cache(fast());
  TheoremReport r = verify_corollary_ell(variety("lattice2"), 1, 2, cache);
  CHECK(r.status == ReportStatus::Pass);
  CHECK(r.values["bound"] == 2);
  TheoremReport imp = verify_corollary_ell(variety("implication2"), 1, 2, cache);
  CHECK(imp.status == ReportStatus::Pass);
  CHECK(imp.values["bound"] == 4);
  TheoremReport one = verify_corollary_ell(variety("baker2"), 2, 1, cache);
  CHECK(one.status == ReportStatus::Pass);
  CHECK(one.notes.size() == 1);
  CHECK_THROWS_AS(verify_corollary_ell(variety("lattice2"), 0, 1, cache), InputError);
}

TEST_CASE("identities under three Gumm terms") {
  SpectrumCache cache(fast());
  TheoremReport r = verify_theorem_4gt(variety("lattice2"), cache);
  CHECK(r.status == ReportStatus::Pass);
  CHECK(r.level == "member");
  CHECK(r.values["claim_exhaustive"] == true);
  CHECK(verify_theorem_4gt(variety("trivial"), cache).status == ReportStatus::Pass);
  TheoremReport b = verify_theorem_4gt(variety("baker2"), cache);
  CHECK(b.status == ReportStatus::Skipped);
}

TEST_CASE("three-distributive corollary") {
  SpectrumCache cache(fast());
  TheoremReport r = verify_corollary_th3d(variety("implication2"), cache);
  CHECK(r.status == ReportStatus::Pass);
  CHECK(r.values["J(1)"] == 2);
  CHECK(verify_corollary_th3d(variety("lattice2"), cache).status == ReportStatus::Skipped);
}

TEST_CASE("directed terms bound relational products") {
  VerifyConfig cfg;
  for (std::size_t l : {1, 2, 3})
    for (AlphaKind kind : {AlphaKind::Congruence, AlphaKind::Tolerance}) {
      TheoremReport r = verify_prop_kk(corpus("baker2"), baker_chain(), l, kind, cfg);
      CHECK(r.status == ReportStatus::Pass);
      CHECK(r.values["k"] == 3);
      CHECK(r.values["exhaustive"] == true);
    }
  std::vector<Term> broken{Term::var(0), parse_term("f(x0,x1,x2)"), Term::var(2)};
  CHECK_THROWS_AS(verify_prop_kk(corpus("baker2"), broken, 2, AlphaKind::Congruence, cfg), InputError);
}

TEST_CASE("Gumm lemma and the derived bounds") {
  SpectrumCache cache(fast());
  TheoremReport r = verify_lemma_gt_and_jgt(variety("lattice2"), cache);
  CHECK(r.status == ReportStatus::Pass);
  CHECK(r.level == "variety+member");
  CHECK(r.values["k"] == 1);
  CHECK(r.values["bound J(2)"] == 4);
  TheoremReport m = verify_lemma_gt_and_jgt(variety("majmin2"), cache);
  CHECK(m.status == ReportStatus::Pass);
  CHECK(m.values["k"] == 0);
  FiniteAlgebra semilattice = parse_algebra("algebra s\nsize 2\nop meet 2\n0 0\n0 1\n");
  TheoremReport s = verify_lemma_gt_and_jgt({"s", {semilattice}}, cache);
  CHECK(s.status == ReportStatus::NotApplicable);
}

TEST_CASE("non-indexed products take the maximum level") {
  SpectrumCache cache(fast());
  TheoremReport a = verify_prop_nip(corpus("lattice2"), corpus("majmin2"), {1}, cache);
  CHECK(a.status == ReportStatus::Pass);
  CHECK(a.values["m=1"]["product"] == 1);
  TheoremReport b = verify_prop_nip(corpus("lattice2"), corpus("implication2"), {1}, cache);
  CHECK(b.status == ReportStatus::Pass);
  CHECK(b.values["m=1"]["product"] == 2);
  TheoremReport c = verify_prop_nip(corpus("implication2"), corpus("trivial"), {1, 2}, cache);
  CHECK(c.status == ReportStatus::Pass);
}

TEST_CASE("spectrum laws") {
  SpectrumCache cache(fast());
  for (const char* name : {"lattice2", "implication2", "majmin2", "baker2", "trivial"}) {
    CAPTURE(name);
    CHECK(verify_spectrum_monotone(variety(name), 2, cache).status == ReportStatus::Pass);
    CHECK(verify_jconv_proximity(variety(name), cache).status == ReportStatus::Pass);
    CHECK(verify_j1_bound(variety(name), 2, cache).status != ReportStatus::Fail);
    CHECK(verify_k_permutable(variety(name), 3, cache).status != ReportStatus::Fail);
  }
  CHECK(verify_j1_bound(variety("lattice2"), 2, cache).status == ReportStatus::Pass);
  TheoremReport kp = verify_k_permutable(variety("implication2"), 3, cache);
  CHECK(kp.status == ReportStatus::Pass);
  CHECK(kp.values.contains("3-permutable"));
  CHECK(verify_k_permutable(variety("lattice2"), 3, cache).status == ReportStatus::Skipped);
}

TEST_CASE("reports serialize with their configuration") {
  VerifyConfig cfg;
  SpectrumCache cache(cfg);
  TheoremReport r = verify_jconv_proximity(variety("lattice2"), cache);
  Json j = to_json(r, cfg);
  CHECK(j["theorem"] == "jconv-proximity");
  CHECK(j["status"] == "pass");
  CHECK(j["config"]["caps"]["max_elements"] == cfg.caps.max_elements);
  CHECK(j["config"]["budget"] == cfg.budget);
}

TEST_CASE("counterexamples round trip through JSON") {
  LawCheck mod = check_congruence_law(fixtures::chain3(), Expr::var('b') * Expr::var('c'),
                                      Expr::var('c') * Expr::var('b'), true, "bc");
  REQUIRE(mod.counterexample);
  Counterexample back = counterexample_from_json(to_json(*mod.counterexample));
  CHECK(back.lhs == mod.counterexample->lhs);
  CHECK(back.relations == mod.counterexample->relations);
  FiniteAlgebra c3 = fixtures::chain3();
  CHECK(replay(back, &c3));

  TheoremReport r;
  r.theorem = "permutability";
  r.status = ReportStatus::Fail;
  r.level = "member";
  r.counterexample = mod.counterexample;
  const auto j = nlohmann::json::parse(to_json(r, VerifyConfig{}).dump());
  CHECK(fixtures::schema_violation(fixtures::load_schema("theorem-report.schema.json"), j) == "");
  CHECK(replay(counterexample_from_json(to_json(r, VerifyConfig{})["counterexample"]), &c3));
}

TEST_CASE("corpus loading and theorem ids") {
  auto corpus_list = load_corpus(CDS_CORPUS_DIR);
  REQUIRE(corpus_list.size() == 5);
  CHECK(corpus_list[0].name == "baker2");
  CHECK(corpus_list[4].name == "trivial");
  SpectrumCache cache(VerifyConfig{});
  CHECK_THROWS_AS(verify_all(corpus_list, cache, "no-such-theorem"), InputError);
  auto reports = verify_all(corpus_list, cache, "jconv-proximity");
  CHECK(reports.size() == 5);
  CHECK_THROWS_AS(load_corpus("/nonexistent/dir"), InputError);
}
