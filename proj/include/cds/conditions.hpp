#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cds/algebra.hpp"
#include "cds/free_algebra.hpp"
#include "cds/identity.hpp"
#include "cds/relations.hpp"
#include "cds/term.hpp"

namespace cds {

enum class Variant { J, JConv, Jr, JrConv, D, T, DayLevel };
std::string to_string(Variant v);

/// Element chain in a free algebra witnessing membership of the target pair
/// in the right-hand relation.
struct Witness {
  std::shared_ptr<const FreeAlgebra> algebra;
  std::size_t m = 0;
  bool converse = false;
  std::vector<std::size_t> chain;
  /// labels[i] names the relation linking chain[i] and chain[i+1].
  std::vector<std::string> labels;
};

enum class Outcome { Value, Exceeded, CapExceeded };
std::string to_string(Outcome o);

struct SpectrumResult {
  Variant variant = Variant::J;
  std::size_t m = 0;
  std::size_t k_max = 0;
  Outcome outcome = Outcome::Exceeded;
  std::optional<std::size_t> value;
  /// Best bound found before a cap stopped the search.
  std::optional<std::size_t> upper_bound;
  std::optional<Witness> witness;
  std::vector<Term> terms;
  std::size_t free_size = 0;
  bool free_complete = false;
  /// Relation family used by the per-algebra variants.
  std::optional<std::size_t> budget;
  bool exhaustive = false;
  std::string note;
};

/// The generator instantiation of an inclusion scheme: variable name to
/// generator partition, over chain.size()+1 generators.
struct Instantiation {
  std::size_t generators = 0;
  std::map<char, GeneratorPartition> partitions;
};
Instantiation instantiate(const InclusionScheme& s);

/// Left chain of (m+1,k+1)-dist: m+1 alternating factors b, c; outer a.
InclusionScheme dist_scheme(std::size_t m, std::size_t k, bool converse);
/// Left chain of the Day function: m factors b, a^c, b, ...
InclusionScheme day_scheme(std::size_t m, std::size_t k);
/// Left chain of the Tschantz function: m factors b, c, b, ...
InclusionScheme tschantz_scheme(std::size_t m, std::size_t k);

/// Whether the variety generated by `bases` satisfies (m+1,k+1)-dist (or its
/// converse form). Returns a chain of k+2 elements of F(m+2) on success.
std::optional<Witness> check_dist(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                                  std::size_t k, bool converse = false,
                                  FreeAlgebraCaps caps = {});

/// Least k <= k_max with check_dist success. Terms are extracted and
/// verified; for m = 1 the value is cross-checked against the Jonsson term
/// search.
SpectrumResult jonsson_level(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                             std::size_t k_max, bool converse = false, FreeAlgebraCaps caps = {});

/// Terms t_0..t_{k+1} of a check_dist witness, verified against the chain
/// identities on the bases. Throws InternalError when verification fails.
std::vector<Term> extract_chain_terms(const Witness& w);
/// The chain identities for m+2-ary terms t_0..t_{k+1}.
bool verify_dist_terms(const std::vector<FiniteAlgebra>& bases, std::size_t m, bool converse,
                       const std::vector<Term>& terms);

enum class TermScheme { Jonsson, Directed, Gumm, PJ };
std::string to_string(TermScheme s);

struct TermChain {
  TermScheme scheme = TermScheme::Jonsson;
  /// Shortest chain length, when any chain exists.
  std::optional<std::size_t> length;
  /// Set when length <= max_len. For PJ: the two terms p, j.
  std::optional<std::vector<Term>> terms;
  std::vector<std::size_t> elements;
  std::size_t free_size = 0;
};

/// Shortest term chain of the scheme in F(3), least element index on ties.
/// Chains count every term including the projections; Gumm chains count p.
TermChain find_terms(const std::vector<FiniteAlgebra>& bases, TermScheme scheme,
                     std::size_t max_len, FreeAlgebraCaps caps = {});
/// Checks the scheme's identities on the bases.
bool verify_chain(const std::vector<FiniteAlgebra>& bases, TermScheme scheme,
                  const std::vector<Term>& terms);

struct IdentityCheck {
  bool holds = false;
  /// Path x0 .. x_m through the top-level factors of the right side.
  std::vector<std::size_t> path;
  std::shared_ptr<const FreeAlgebra> algebra;
};

/// Decides the inclusion for the variety on F(m+1), m = chain length.
IdentityCheck check_identity_generic(const std::vector<FiniteAlgebra>& bases,
                                     const InclusionScheme& scheme, FreeAlgebraCaps caps = {});

/// D(m): least k with a(b o_m a^c) <= a^b o_k a^c.
SpectrumResult day_function(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                            std::size_t k_max, FreeAlgebraCaps caps = {});
/// D(3), the least k for which the Day identity holds.
SpectrumResult day_level(const std::vector<FiniteAlgebra>& bases, std::size_t k_max,
                         FreeAlgebraCaps caps = {});
/// T(m): least k with a(b o_m c) <= a^(c*b) o (a^c o_k a^b). For m = 2 the
/// value is cross-checked against the Gumm term search.
SpectrumResult tschantz_function(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                                 std::size_t k_max, FreeAlgebraCaps caps = {});

enum class AlphaKind { Congruence, Tolerance };
std::string to_string(AlphaKind k);

/// Named relations with an inclusion lhs <= rhs that fails at (a,b).
struct Counterexample {
  std::string algebra;
  std::size_t size = 0;
  std::map<char, BinRel> relations;
  std::string lhs;
  std::string rhs;
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Re-evaluates the counterexample: (a,b) in lhs and not in rhs. With an
/// algebra, also checks that every relation is reflexive and admissible.
bool replay(const Counterexample& c, const FiniteAlgebra* algebra = nullptr);

enum class CheckStatus { Holds, HoldsWithinBudget, Fails, BudgetExceeded };
std::string to_string(CheckStatus s);

struct RelationCheck {
  CheckStatus status = CheckStatus::Holds;
  std::optional<Counterexample> counterexample;
  std::size_t budget = 0;
  bool exhaustive = false;
  std::size_t cases = 0;
};

constexpr std::size_t kDefaultRelationBudget = 2;
constexpr std::size_t kDefaultCaseCap = 5000000;

/// Relation families used by the per-algebra checks.
RelationFamily alpha_family(const FiniteAlgebra& a, AlphaKind kind, std::size_t budget);

/// a(R o_m R') <= Theta o_k Theta' for R = S_0 o ... o S_l and
/// Theta = a^S_0 o ... o a^S_l, over the enumerated relations.
RelationCheck check_smile_C(const FiniteAlgebra& a, std::size_t m, std::size_t k, std::size_t l,
                            AlphaKind alpha_kind, std::size_t budget = kDefaultRelationBudget,
                            std::size_t case_cap = kDefaultCaseCap);
/// Same check with explicitly given relation families.
RelationCheck check_smile_C(const FiniteAlgebra& a, std::size_t m, std::size_t k, std::size_t l,
                            const RelationFamily& alphas, const RelationFamily& relations,
                            std::size_t case_cap = kDefaultCaseCap);

/// Least k with a(S o_{m+1} T) <= a^S o_{k+1} a^T (converse: a^T first) over
/// the enumerated relations of the single algebra `a`. A per-algebra
/// necessary condition, not a decision for the variety.
SpectrumResult relational_level(const FiniteAlgebra& a, std::size_t m, std::size_t k_max,
                                AlphaKind alpha_kind, std::size_t budget = kDefaultRelationBudget,
                                bool converse = false);

}  // namespace cds
