#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cds/algebra.hpp"
#include "cds/bitset.hpp"

namespace cds {

using Pair = std::pair<Element, Element>;

/// Boolean n x n matrix. Relation kinds (reflexive, admissible, ...) are
/// predicates checked where needed, not encoded in the type: compositions of
/// congruences are not congruences.
class BinRel {
 public:
  BinRel() = default;
  explicit BinRel(std::size_t n) : n_(n), rows_(n, Bitset(n)) {}

  static BinRel diagonal(std::size_t n);
  static BinRel full(std::size_t n);
  static BinRel from_pairs(std::size_t n, const std::vector<Pair>& pairs);

  std::size_t size() const { return n_; }
  bool test(std::size_t a, std::size_t b) const { return rows_[a].test(b); }
  void set(std::size_t a, std::size_t b) { rows_[a].set(b); }
  const Bitset& row(std::size_t a) const { return rows_[a]; }
  Bitset& row(std::size_t a) { return rows_[a]; }
  std::size_t count() const;
  std::vector<Pair> pairs() const;

  /// Image of a set of elements: { b : a R b for some a in s }.
  Bitset image(const Bitset& s) const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }
  /// Closed under every operation of `a` applied coordinatewise.
  bool is_admissible(const FiniteAlgebra& a) const;
  bool is_subset_of(const BinRel& o) const;

  /// n lines of n characters '0'/'1'.
  std::string to_string() const;

  friend bool operator==(const BinRel&, const BinRel&) = default;
  friend bool operator<(const BinRel& a, const BinRel& b) { return a.rows_ < b.rows_; }

 private:
  std::size_t n_ = 0;
  std::vector<Bitset> rows_;
};

BinRel compose(const BinRel& r, const BinRel& s);
BinRel converse(const BinRel& r);
BinRel meet(const BinRel& r, const BinRel& s);
BinRel join(const BinRel& r, const BinRel& s);
BinRel transitive_closure(const BinRel& r);
/// r o s o r o ... with exactly m factors; m = 0 gives the diagonal.
BinRel compose_alt(const BinRel& r, const BinRel& s, std::size_t m);
/// r o r o ... with k factors.
inline BinRel power(const BinRel& r, std::size_t k) { return compose_alt(r, r, k); }

/// Equivalence relation stored as a canonical block array: block ids are
/// numbered in order of their least member.
class Congruence {
 public:
  Congruence() = default;
  /// Canonicalizes an arbitrary labelling of elements.
  explicit Congruence(const std::vector<std::size_t>& labels);

  static Congruence identity(std::size_t n);
  static Congruence full(std::size_t n);
  /// Throws InputError unless `r` is an equivalence.
  static Congruence from_relation(const BinRel& r);

  std::size_t size() const { return block_.size(); }
  std::size_t block(std::size_t a) const { return block_[a]; }
  const std::vector<std::size_t>& blocks() const { return block_; }
  std::size_t block_count() const { return members_.size(); }
  const std::vector<std::size_t>& members(std::size_t b) const { return members_[b]; }
  bool related(std::size_t a, std::size_t b) const { return block_[a] == block_[b]; }

  BinRel to_relation() const;
  Bitset image(const Bitset& s) const;
  bool is_admissible(const FiniteAlgebra& a) const;
  /// `{{0,1},{2,3}}`
  std::string to_string() const;

  friend bool operator==(const Congruence& a, const Congruence& b) { return a.block_ == b.block_; }
  friend bool operator<(const Congruence& a, const Congruence& b) { return a.block_ < b.block_; }

 private:
  std::vector<std::size_t> block_;
  std::vector<std::vector<std::size_t>> members_;
};

Congruence meet(const Congruence& a, const Congruence& b);
/// Equivalence join; the join of two congruences is again a congruence.
Congruence join(const Congruence& a, const Congruence& b);

/// Smallest reflexive admissible relation containing `pairs`: the subuniverse
/// of A^2 generated by the pairs together with the diagonal.
BinRel admissible_closure(const FiniteAlgebra& a, const std::vector<Pair>& pairs);
/// admissible_closure of the pairs and their converses.
BinRel tolerance_generate(const FiniteAlgebra& a, const std::vector<Pair>& pairs);
/// Least congruence containing `pairs`, computed by alternating admissible
/// closure and symmetric-transitive closure until both are stable.
Congruence congruence_generate(const FiniteAlgebra& a, const std::vector<Pair>& pairs);

constexpr std::size_t kDefaultCongruenceCap = 64;

/// Every congruence of `a`: principal congruences closed under joins, sorted
/// by decreasing block count then by block array. Throws CapExceeded when
/// |A| > cap.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a,
                                        std::size_t cap = kDefaultCongruenceCap);

/// Largest universe for which the exhaustive reflexive-relation filter runs.
constexpr std::size_t kExhaustiveRelationLimit = 4;

/// Distinct admissible closures of at most `budget` off-diagonal pairs, in
/// order of discovery (diagonal first).
std::vector<BinRel> reflexive_admissible_by_budget(const FiniteAlgebra& a, std::size_t budget);
/// Every reflexive admissible relation, by filtering all 2^(n^2-n) reflexive
/// relations. Requires n <= kExhaustiveRelationLimit.
std::vector<BinRel> reflexive_admissible_exhaustive(const FiniteAlgebra& a);

struct RelationFamily {
  std::vector<BinRel> relations;
  bool exhaustive = false;  // true when the family is provably complete
  std::size_t budget = 0;
};

/// Budget-p closures, plus the exhaustive filter when n <= 4, plus every
/// congruence; deduplicated, in that order.
RelationFamily enumerate_reflexive_admissible(const FiniteAlgebra& a, std::size_t budget);
/// Tolerances: symmetric members of the relation family plus tolerance_generate
/// of at most `budget` pairs.
RelationFamily enumerate_tolerances(const FiniteAlgebra& a, std::size_t budget);

}  // namespace cds
