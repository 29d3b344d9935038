#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "schema_check.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cds");
  std::ostringstream out, err;
  int code = cds::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string alg(const char* name) { return std::string(CDS_CORPUS_DIR) + "/" + name + ".alg"; }

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("spectrum subcommand") {
  Result r = run({"spectrum", "--variant", "j", "--m", "1", "--k-max", "6", alg("lattice2")});
  CHECK(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["variant"] == "J");
  CHECK(j["m"] == 1);
  CHECK(j["value"] == 1);
  CHECK(j["caps"]["max_elements"] == 200000);
  CHECK(j["terms"].size() == 3);
  CHECK_FALSE(j.contains("timing_ms"));

  Result e = run({"spectrum", "--variant", "j", "--m", "1", "--k-max", "0", alg("implication2")});
  CHECK(e.code == 3);
  CHECK(parse(e.out)["value"] == "exceeded");

  Result t = run({"--timings", "spectrum", "--variant", "tschantz", "--m", "2", alg("lattice2")});
  CHECK(t.code == 0);
  CHECK(parse(t.out).contains("timing_ms"));

  Result jr = run({"spectrum", "--variant", "jr", alg("lattice2")});
  CHECK(jr.code == 0);
  CHECK(parse(jr.out)["budget"] == 2);

  CHECK(run({"spectrum", "--variant", "day", "--m", "3", alg("majmin2")}).code == 0);
  CHECK(run({"spectrum", "--variant", "jconv", alg("lattice2")}).code == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"spectrum", "--variant", "bogus", alg("lattice2")}).code == 2);
  CHECK(run({"spectrum", "/nonexistent.alg"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"nosuchcommand"}).code == 2);
  CHECK(run({}).code == 2);
  Result r = run({"check", "--identity", "a*b <= a", alg("lattice2")});
  CHECK(r.code == 2);
  CHECK(r.err.find("shape") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({"verify", "no-such-theorem"}).code == 2);
}

TEST_CASE("cap exceeded exits with 3") {
  Result r = run({"--max-elements", "10", "free-algebra", "--n", "4", alg("lattice2")});
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("check subcommand") {
  Result r = run({"check", "--identity", "a^(b*c) <= a^b * a^c * a^b", alg("lattice2")});
  CHECK(r.code == 0);
  CHECK(parse(r.out)["holds"] == true);
  Result f = run({"check", "--identity", "a^(b*c) <= a^b * a^c", alg("implication2")});
  CHECK(f.code == 1);
  auto j = parse(f.out);
  CHECK(j["holds"] == false);
  CHECK(j.contains("counterexample"));
}

TEST_CASE("free-algebra, congruences, terms, product") {
  Result f = run({"free-algebra", "--n", "3", "--provenance", alg("lattice2")});
  CHECK(f.code == 0);
  auto j = parse(f.out);
  CHECK(j["elements"] == 18);
  CHECK(j["provenance"].size() == 18);
  CHECK(j["provenance"][0]["term"] == "x0");

  Result c = run({"congruences", alg("lattice2")});
  CHECK(parse(c.out)["algebras"][0]["count"] == 2);

  Result t = run({"terms", "--scheme", "directed", alg("baker2")});
  CHECK(t.code == 0);
  CHECK(parse(t.out)["length"] == 4);
  CHECK(run({"terms", "--scheme", "pj", alg("baker2")}).code == 3);

  Result p = run({"product", "--kind", "nonindexed", alg("lattice2"), alg("majmin2")});
  CHECK(p.code == 0);
  CHECK(p.out.find("size 4") != std::string::npos);
  CHECK(run({"product", "--kind", "direct", alg("lattice2"), alg("majmin2")}).code == 2);
}

TEST_CASE("verify subcommand on a single theorem") {
  Result r = run({"verify", "jconv-proximity"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line); ++n) CHECK(parse(line)["status"] == "pass");
  CHECK(n == 5);
  CHECK(r.err.find("5 reports") != std::string::npos);
  Result again = run({"verify", "jconv-proximity"});
  CHECK(again.out == r.out);
}

TEST_CASE("reports validate against the shipped schemas") {
  const auto spectrum = fixtures::load_schema("spectrum.schema.json");
  for (const char* variant : {"j", "jconv", "jr", "day", "tschantz"}) {
    CAPTURE(variant);
    Result r = run({"--timings", "spectrum", "--variant", variant, "--m", "2", alg("majmin2")});
    CHECK(fixtures::schema_violation(spectrum, parse(r.out)) == "");
  }
  Result e = run({"spectrum", "--k-max", "0", alg("implication2")});
  CHECK(fixtures::schema_violation(spectrum, parse(e.out)) == "");
  CHECK(fixtures::schema_violation(spectrum, nlohmann::json{{"variant", "J"}}) != "");

  const auto report = fixtures::load_schema("theorem-report.schema.json");
  Result v = run({"verify", "prop-kk"});
  std::istringstream lines(v.out);
  for (std::string line; std::getline(lines, line);)
    CHECK(fixtures::schema_violation(report, parse(line)) == "");
}
