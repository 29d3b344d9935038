#include <doctest.h>

#include <algorithm>
#include <set>

#include "cds/error.hpp"
#include "common.hpp"

using namespace cds;
using fixtures::corpus;

namespace {

const char* kCorpus[] = {"lattice2", "implication2", "majmin2", "baker2", "trivial"};

std::vector<Element> elems(std::initializer_list<Element> xs) { return xs; }

}  // namespace

TEST_CASE("parse the two-element lattice") {
  FiniteAlgebra a = corpus("lattice2");
  CHECK(a.name() == "lattice2");
  CHECK(a.size() == 2);
  REQUIRE(a.signature().size() == 2);
  CHECK(a.signature()[0] == OpSymbol{"meet", 2});
  // Row-major, first argument most significant.
  CHECK(a.apply(0, elems({1, 0})) == 0);
  CHECK(a.apply(0, elems({1, 1})) == 1);
  CHECK(a.apply(1, elems({0, 1})) == 1);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_algebra("algebra x\nsize 2\nop f 1\n0 2\n"),
                       doctest::Contains("element out of range"), ParseError);
  try {
    parse_algebra("algebra x\nsize 2\nop f 1\n0 2\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_algebra("algebra x\nsize 0\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("size 2\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra x\nsize 2\nop f 2\n0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra x\nsize 2\nop f 1\n0 0\nop f 1\n0 0\n"), ParseError);
}

TEST_CASE("comments, blank lines and constants") {
  FiniteAlgebra a = parse_algebra("# c\n\nalgebra k\nsize 3\nop one 0\n1\nop s 1\n1 2 0\n");
  CHECK(a.apply(0, {}) == 1);
  CHECK(eval_term(a, parse_term("s(one)"), {}) == 2);
}

TEST_CASE("serialize then parse is the identity on the corpus") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    FiniteAlgebra a = corpus(name);
    FiniteAlgebra b = parse_algebra(serialize_algebra(a));
    CHECK(b.name() == a.name());
    CHECK(b.size() == a.size());
    CHECK(b.signature() == a.signature());
    for (std::size_t op = 0; op < a.signature().size(); ++op) CHECK(b.table(op) == a.table(op));
  }
}

TEST_CASE("term evaluation") {
  FiniteAlgebra a = corpus("lattice2");
  CHECK(eval_term(a, Term::var(0), elems({1})) == 1);
  CHECK(eval_term(a, parse_term("meet(x0,join(x1,x2))"), elems({1, 0, 1})) == 1);
  CHECK_THROWS_AS(eval_term(a, parse_term("meet(x0,x3)"), elems({1, 0})), InputError);
  CHECK_THROWS_AS(eval_term(a, parse_term("foo(x0)"), elems({1})), InputError);
}

TEST_CASE("term parse and print round trip") {
  for (const char* s : {"x0", "f(x0,f(x2,x1,x0),x1)", "meet(join(x0,x1),x12)"}) {
    CHECK(parse_term(s).to_string() == s);
  }
  CHECK_THROWS_AS(parse_term("f(x0,"), InputError);
  Term t = parse_term("f(x0,x1)");
  CHECK(substitute(t, {Term::var(1), Term::var(0)}).to_string() == "f(x1,x0)");
  CHECK(t.variable_bound() == 2);
}

TEST_CASE("identities") {
  FiniteAlgebra lat = corpus("lattice2");
  FiniteAlgebra imp = corpus("implication2");
  std::vector<FiniteAlgebra> l{lat}, i{imp};
  const Term med = parse_term("join(join(meet(x0,x1),meet(x0,x2)),meet(x1,x2))");
  const Term med2 = substitute(med, {Term::var(1), Term::var(0), Term::var(2)});
  CHECK(holds_identity(l, med, med2));
  CHECK_FALSE(holds_identity(l, parse_term("meet(x0,x1)"), parse_term("join(x0,x1)")));
  CHECK(holds_identity(i, parse_term("imp(x0,x0)"), parse_term("imp(x1,x1)")));
}

TEST_CASE("identities persist in direct products") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    FiniteAlgebra a = corpus(name);
    FiniteAlgebra p = direct_product(a, a);
    const auto& op = a.signature()[0];
    // Brute force: every identity between two depth-one terms over 3 variables.
    std::vector<Term> terms{Term::var(0), Term::var(1), Term::var(2)};
    std::vector<Term> leaves = terms;
    std::vector<std::size_t> idx(op.arity, 0);
    for (;;) {
      std::vector<Term> ch;
      for (auto k : idx) ch.push_back(leaves[k]);
      terms.push_back(Term::node(op.name, ch));
      std::size_t pos = op.arity;
      while (pos > 0 && ++idx[pos - 1] == leaves.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
    std::vector<FiniteAlgebra> base{a}, prod{p};
    for (const auto& s : terms)
      for (const auto& t : terms) CHECK(holds_identity(base, s, t, 3) == holds_identity(prod, s, t, 3));
  }
}

TEST_CASE("direct product") {
  FiniteAlgebra lat = corpus("lattice2");
  FiniteAlgebra sq = direct_product(lat, lat);
  CHECK(sq.size() == 4);
  CHECK(all_congruences(sq).size() == 4);
  FiniteAlgebra with_trivial = direct_product(lat, parse_algebra("algebra t\nsize 1\nop meet 2\n0\nop join 2\n0\n"));
  CHECK(with_trivial.size() == 2);
  for (std::size_t op = 0; op < 2; ++op) CHECK(with_trivial.table(op) == lat.table(op));
  CHECK_THROWS_AS(direct_product(lat, corpus("implication2")), InputError);
}

TEST_CASE("non-indexed product") {
  FiniteAlgebra lat = corpus("lattice2"), mm = corpus("majmin2");
  FiniteAlgebra p = nonindexed_product(lat, mm);
  CHECK(p.size() == 4);
  REQUIRE(p.signature().size() == 4);
  CHECK(p.signature()[0].name == "meet");
  CHECK(p.signature()[3].name == "min");
  CHECK_THROWS_AS(nonindexed_product(lat, lat), InputError);
  CHECK_NOTHROW(nonindexed_product(lat, lat, {{"meet", "m2"}, {"join", "j2"}}));

  // Reduct to one part, restricted to the pairs (x, 0), is the factor itself.
  FiniteAlgebra r = reduct(p, {"meet", "join"});
  for (std::size_t op = 0; op < 2; ++op)
    for (Element x = 0; x < 2; ++x)
      for (Element y = 0; y < 2; ++y) {
        Element args[] = {static_cast<Element>(x * 2), static_cast<Element>(y * 2)};
        CHECK(r.apply(op, args) == lat.apply(op, elems({x, y})) * 2);
      }
  FiniteAlgebra s = reduct(p, {"maj", "min"});
  for (std::size_t op = 0; op < 2; ++op)
    for (Element c = 0; c < 8; ++c) {
      Element args[] = {static_cast<Element>(c >> 2 & 1), static_cast<Element>(c >> 1 & 1),
                        static_cast<Element>(c & 1)};
      Element raw[] = {args[0], args[1], args[2]};
      CHECK(s.apply(op, args) == mm.apply(op, raw));
    }
}

TEST_CASE("subalgebra generation") {
  FiniteAlgebra lat = corpus("lattice2");
  CHECK(subalgebra_generate(lat, elems({0})).elements == elems({0}));
  CHECK(subalgebra_generate(lat, elems({0, 1})).elements.size() == 2);
  FiniteAlgebra sq = direct_product(lat, lat);
  GeneratedSet g = subalgebra_generate(sq, elems({1, 2}));
  CHECK(g.elements.size() == 4);
  CHECK(g.provenance[0].is_seed());
  CHECK_FALSE(g.provenance[2].is_seed());
  GeneratedSet again = subalgebra_generate(sq, g.elements);
  std::set<Element> x(g.elements.begin(), g.elements.end()), y(again.elements.begin(), again.elements.end());
  CHECK(x == y);

  FiniteAlgebra imp = corpus("implication2");
  CHECK(subalgebra_generate(imp, elems({0})).elements.size() == 2);
}
