#include <doctest.h>

#include <set>

#include "cds/error.hpp"
#include "common.hpp"

using namespace cds;
using fixtures::corpus;

namespace {

BinRel rel(std::size_t n, std::vector<Pair> pairs, bool reflexive = true) {
  BinRel r = reflexive ? BinRel::diagonal(n) : BinRel(n);
  for (auto [a, b] : pairs) r.set(a, b);
  return r;
}

/// Oracle: composition by definition.
BinRel brute_compose(const BinRel& r, const BinRel& s) {
  const std::size_t n = r.size();
  BinRel out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (r.test(a, b) && s.test(b, c)) out.set(a, c);
  return out;
}

/// Oracle: least congruence containing the pairs, as the meet of all
/// admissible equivalences containing them.
Congruence oracle_congruence(const FiniteAlgebra& a, const std::vector<Pair>& pairs) {
  Congruence best = Congruence::full(a.size());
  for (const auto& c : fixtures::brute_congruences(a)) {
    bool ok = true;
    for (auto [x, y] : pairs) ok = ok && c.related(x, y);
    if (ok) best = meet(best, c);
  }
  return best;
}

std::vector<FiniteAlgebra> small_algebras() {
  FiniteAlgebra lat = corpus("lattice2");
  return {lat,
          corpus("implication2"),
          corpus("majmin2"),
          corpus("baker2"),
          corpus("trivial"),
          direct_product(lat, lat),
          fixtures::chain3(),
          direct_product(corpus("implication2"), corpus("implication2"))};
}

}  // namespace

TEST_CASE("composition") {
  BinRel r = rel(3, {{0, 1}}), s = rel(3, {{1, 2}});
  CHECK(compose(r, s).test(0, 2));
  CHECK(compose(r, BinRel::diagonal(3)) == r);
  CHECK(compose(r, s) == brute_compose(r, s));
  CHECK(compose_alt(r, s, 1) == r);
  CHECK(compose_alt(r, s, 2) == compose(r, s));
  CHECK(compose_alt(r, s, 0) == BinRel::diagonal(3));
}

TEST_CASE("composition agrees with the definition on random relations") {
  std::uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 1 + next() % 9;
    BinRel r(n), s(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (next() % 3 == 0) r.set(a, b);
        if (next() % 3 == 0) s.set(a, b);
      }
    CHECK(compose(r, s) == brute_compose(r, s));
    CHECK(converse(converse(r)) == r);
    CHECK(meet(r, BinRel::full(n)) == r);
    BinRel tc = transitive_closure(r);
    CHECK(tc.is_transitive());
    CHECK(r.is_subset_of(tc));
  }
}

TEST_CASE("composition of congruences need not be symmetric") {
  // On the chain 0 < 1 < 2 the congruences {01|2} and {0|12} compose to a
  // relation containing (0,2) but not (2,0).
  FiniteAlgebra c = fixtures::chain3();
  Congruence low({0, 0, 1}), high({0, 1, 1});
  REQUIRE(low.is_admissible(c));
  REQUIRE(high.is_admissible(c));
  BinRel comp = compose(low.to_relation(), high.to_relation());
  CHECK(comp.test(0, 2));
  CHECK_FALSE(comp.test(2, 0));
  CHECK_FALSE(comp.is_symmetric());

  // On the square of the two-element lattice the coordinate kernels permute.
  FiniteAlgebra sq = direct_product(corpus("lattice2"), corpus("lattice2"));
  Congruence first({0, 0, 1, 1}), second({0, 1, 0, 1});
  CHECK(compose(first.to_relation(), second.to_relation()).is_symmetric());
  CHECK(compose_alt(first.to_relation(), second.to_relation(), 3) ==
        compose(compose(first.to_relation(), second.to_relation()), first.to_relation()));
}

TEST_CASE("transitive closure") {
  BinRel r = rel(3, {{0, 1}, {1, 2}});
  CHECK(transitive_closure(r).test(0, 2));
}

TEST_CASE("admissible closure and tolerances") {
  FiniteAlgebra lat = corpus("lattice2");
  CHECK(admissible_closure(lat, {}) == BinRel::diagonal(2));
  CHECK(admissible_closure(lat, {{0, 1}}) == rel(2, {{0, 1}}));
  CHECK(tolerance_generate(lat, {}) == BinRel::diagonal(2));
  CHECK(tolerance_generate(lat, {{0, 1}}) == BinRel::full(2));
}

TEST_CASE("closure operators are extensive, monotone, idempotent and nested") {
  for (const auto& a : small_algebras()) {
    CAPTURE(a.name());
    const std::size_t n = a.size();
    std::vector<Pair> all;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (x != y) all.push_back({x, y});
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::vector<Pair> one{all[i]};
      std::vector<Pair> two{all[i], all[(i * 7 + 3) % all.size()]};
      BinRel ad1 = admissible_closure(a, one), ad2 = admissible_closure(a, two);
      BinRel to1 = tolerance_generate(a, one);
      Congruence cg1 = congruence_generate(a, one);
      CHECK(ad1.test(all[i].first, all[i].second));
      CHECK(ad1.is_admissible(a));
      CHECK(ad1.is_reflexive());
      CHECK(ad1.is_subset_of(ad2));
      CHECK(admissible_closure(a, ad1.pairs()) == ad1);
      CHECK(to1.is_symmetric());
      CHECK(to1.is_admissible(a));
      CHECK(ad1.is_subset_of(to1));
      CHECK(to1.is_subset_of(cg1.to_relation()));
      CHECK(congruence_generate(a, cg1.to_relation().pairs()) == cg1);
    }
  }
}

TEST_CASE("congruence generation matches the brute-force oracle") {
  for (const auto& a : small_algebras()) {
    CAPTURE(a.name());
    const std::size_t n = a.size();
    CHECK(congruence_generate(a, {}) == Congruence::identity(n));
    std::vector<Pair> everything;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) everything.push_back({x, y});
    CHECK(congruence_generate(a, everything) == Congruence::full(n));
    for (Element x = 0; x < n; ++x)
      for (Element y = x + 1; y < n; ++y) {
        CHECK(congruence_generate(a, {{x, y}}) == oracle_congruence(a, {{x, y}}));
        for (Element z = 0; z < n; ++z)
          CHECK(congruence_generate(a, {{x, y}, {z, static_cast<Element>((z + 1) % n)}}) ==
                oracle_congruence(a, {{x, y}, {z, static_cast<Element>((z + 1) % n)}}));
      }
  }
  FiniteAlgebra sq = direct_product(corpus("lattice2"), corpus("lattice2"));
  CHECK(congruence_generate(sq, {{0, 1}}) == Congruence({0, 0, 1, 1}));
}

TEST_CASE("all congruences match the brute-force oracle") {
  for (const auto& a : small_algebras()) {
    CAPTURE(a.name());
    auto cons = all_congruences(a);
    std::set<Congruence> got(cons.begin(), cons.end());
    CHECK(got.size() == cons.size());
    CHECK(got == fixtures::brute_congruences(a));
  }
  CHECK(all_congruences(corpus("trivial")).size() == 1);
  CHECK(all_congruences(corpus("lattice2")).size() == 2);
  CHECK(all_congruences(fixtures::pentagon()).size() == 5);
  CHECK_THROWS_AS(all_congruences(fixtures::chain3(), 2), CapExceeded);
}

TEST_CASE("congruence lattice laws") {
  for (const auto& a : small_algebras()) {
    auto cons = all_congruences(a);
    for (const auto& x : cons)
      for (const auto& y : cons) {
        CHECK(meet(x, y).is_admissible(a));
        const BinRel xr = x.to_relation(), yr = y.to_relation();
        BinRel prev = compose_alt(xr, yr, 1);
        for (std::size_t m = 2; m <= 2 * a.size() + 1; ++m) {
          BinRel cur = compose_alt(xr, yr, m);
          CHECK(prev.is_subset_of(cur));
          prev = cur;
        }
        CHECK(prev == join(x, y).to_relation());
        CHECK(Congruence::from_relation(x.to_relation()) == x);
      }
  }
}

TEST_CASE("majority algebras satisfy the two-step distributive inclusion") {
  for (const auto& a : {corpus("lattice2"), corpus("majmin2"), direct_product(corpus("lattice2"), corpus("lattice2")),
                        fixtures::chain3()}) {
    auto cons = all_congruences(a);
    for (const auto& x : cons)
      for (const auto& y : cons)
        for (const auto& z : cons) {
          BinRel l = meet(x.to_relation(), compose(y.to_relation(), z.to_relation()));
          BinRel xy = meet(x.to_relation(), y.to_relation()), xz = meet(x.to_relation(), z.to_relation());
          CHECK(l.is_subset_of(compose(compose(xy, xz), xy)));
        }
  }
}

TEST_CASE("reflexive admissible enumeration") {
  FiniteAlgebra lat = corpus("lattice2");
  CHECK(reflexive_admissible_by_budget(lat, 0) == std::vector<BinRel>{BinRel::diagonal(2)});
  CHECK(reflexive_admissible_exhaustive(lat).size() == 4);
  for (const auto& a : small_algebras()) {
    CAPTURE(a.name());
    auto oracle = fixtures::brute_reflexive_admissible(a);
    auto ex = reflexive_admissible_exhaustive(a);
    CHECK(std::set<BinRel>(ex.begin(), ex.end()) == oracle);
    if (a.size() <= 4) {
      auto full = reflexive_admissible_by_budget(a, a.size() * a.size());
      CHECK(std::set<BinRel>(full.begin(), full.end()) == oracle);
    }
    RelationFamily fam = enumerate_reflexive_admissible(a, 2);
    CHECK(fam.exhaustive);
    std::set<BinRel> got(fam.relations.begin(), fam.relations.end());
    CHECK(got.size() == fam.relations.size());
    for (const auto& c : all_congruences(a)) CHECK(got.count(c.to_relation()) == 1);
    RelationFamily tol = enumerate_tolerances(a, 2);
    for (const auto& t : tol.relations) {
      CHECK(t.is_symmetric());
      CHECK(t.is_admissible(a));
    }
  }
  FiniteAlgebra big = direct_product(fixtures::chain3(), fixtures::chain3());
  RelationFamily fam = enumerate_reflexive_admissible(big, 1);
  CHECK_FALSE(fam.exhaustive);
  for (const auto& r : fam.relations) CHECK((r.is_reflexive() && r.is_admissible(big)));
}
