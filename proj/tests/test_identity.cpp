#include <doctest.h>

#include "cds/error.hpp"
#include "cds/identity.hpp"
#include "common.hpp"

using namespace cds;
using fixtures::corpus;

TEST_CASE("expression parsing and printing") {
  CHECK(parse_expr("a^(b*c)").to_string() == "a^(b*c)");
  CHECK(parse_expr("a ^ b * a ^ c").to_string() == "a^b*a^c");
  CHECK(parse_expr("(a*b)'").to_string() == "(a*b)'");
  CHECK(parse_expr("0").kind() == Expr::Kind::Diagonal);
  CHECK(parse_expr("((a))").kind() == Expr::Kind::Var);
  CHECK(parse_expr("a^(c*b)*(a^c*a^b)").variables() == std::set<char>{'a', 'b', 'c'});
  for (const char* s : {"a^(b*c*b)*a^c", "a'^b", "(a^b)'*c", "a^(b*(c^a)*b)"})
    CHECK(parse_expr(parse_expr(s).to_string()) == parse_expr(s));
  CHECK_THROWS_WITH_AS(parse_expr("a^"), doctest::Contains("offset"), InputError);
  CHECK_THROWS_AS(parse_expr("a b"), InputError);
  CHECK_THROWS_AS(parse_expr("(a"), InputError);
}

TEST_CASE("alternating products") {
  Expr b = Expr::var('b'), c = Expr::var('c');
  CHECK(alternating(b, c, 0).kind() == Expr::Kind::Diagonal);
  CHECK(alternating(b, c, 1) == b);
  CHECK(alternating(b, c, 3).to_string() == "b*c*b");
}

TEST_CASE("inclusion parsing enforces the restricted shape") {
  InclusionScheme s = parse_inclusion("a^(b*c) <= a^b * a^c * a^b");
  CHECK(s.alpha == 'a');
  REQUIRE(s.chain.size() == 2);
  CHECK(s.chain[0] == std::set<char>{'b'});
  CHECK(s.rhs.to_string() == "a^b*a^c*a^b");
  InclusionScheme d = parse_inclusion("a^(b*(a^c)*b) <= a^b*a^c");
  CHECK(d.chain[1] == std::set<char>{'a', 'c'});
  CHECK_THROWS_WITH_AS(parse_inclusion("a*b <= a"), doctest::Contains("shape"), InputError);
  CHECK_THROWS_AS(parse_inclusion("a^(b*c) <= d"), InputError);
  CHECK_THROWS_AS(parse_inclusion("a^(b*c)"), InputError);
  CHECK_THROWS_AS(parse_inclusion("a^(b*c') <= a"), InputError);
}

TEST_CASE("evaluation: matrices, images and membership agree") {
  FiniteAlgebra sq = direct_product(corpus("lattice2"), corpus("lattice2"));
  FiniteAlgebra c3 = fixtures::chain3();
  const char* exprs[] = {"a^(b*c)", "a^b*a^c*a^b", "(b*c)'", "a^(c*b)*(a^c*a^b)", "0", "b*c*b*c",
                         "a^(b'*c)"};
  for (const auto& alg : {sq, c3}) {
    auto cons = all_congruences(alg);
    auto rels = reflexive_admissible_exhaustive(alg);
    for (std::size_t i = 0; i < cons.size(); ++i)
      for (std::size_t j = 0; j < rels.size(); j += 3) {
        RelEnv env{{'a', RelValue(cons[i])},
                   {'b', RelValue(rels[j])},
                   {'c', RelValue(cons[(i + j) % cons.size()])}};
        const BinRel a = cons[i].to_relation(), b = rels[j], c = cons[(i + j) % cons.size()].to_relation();
        CHECK(evaluate(parse_expr("a^(b*c)"), env) == meet(a, compose(b, c)));
        CHECK(evaluate(parse_expr("(b*c)'"), env) == converse(compose(b, c)));
        for (const char* text : exprs) {
          Expr e = parse_expr(text);
          BinRel m = evaluate(e, env);
          for (std::size_t x = 0; x < alg.size(); ++x) {
            Bitset s(alg.size());
            s.set(x);
            Bitset img = image(e, env, s);
            Bitset back = image(e, env, s, true);
            for (std::size_t y = 0; y < alg.size(); ++y) {
              CHECK(contains(e, env, x, y) == m.test(x, y));
              CHECK(img.test(y) == m.test(x, y));
              CHECK(back.test(y) == m.test(y, x));
            }
          }
        }
      }
  }
}

TEST_CASE("composition paths pick the least intermediate element") {
  FiniteAlgebra c3 = fixtures::chain3();
  Congruence low({0, 0, 1}), high({0, 1, 1});
  RelEnv env{{'b', RelValue(low)}, {'c', RelValue(high)}};
  Expr e = parse_expr("b*c");
  CHECK(composition_path(e, env, 0, 2) == std::vector<std::size_t>{0, 1, 2});
  CHECK(composition_path(e, env, 2, 0).empty());
  CHECK(composition_path(parse_expr("b*c*b"), env, 0, 0) == std::vector<std::size_t>{0, 0, 0, 0});
}
