#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cds/bitset.hpp"
#include "cds/relations.hpp"

namespace cds {

/// Relational expression over single-letter variables: meet, composition,
/// converse, and the diagonal `0`.
class Expr {
 public:
  enum class Kind { Var, Diagonal, Meet, Compose, Converse };

  static Expr var(char name);
  static Expr diagonal();
  static Expr meet(std::vector<Expr> children);
  static Expr compose(std::vector<Expr> children);
  static Expr converse(Expr child);

  Kind kind() const { return kind_; }
  char name() const { return name_; }
  const std::vector<Expr>& children() const { return children_; }

  std::set<char> variables() const;
  /// DSL rendering: `^` meet, `*` compose, postfix `'` converse.
  std::string to_string() const;

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  Kind kind_ = Kind::Diagonal;
  char name_ = 0;
  std::vector<Expr> children_;
};

/// a o b o a o ... with exactly k factors; k = 0 gives the diagonal.
Expr alternating(const Expr& a, const Expr& b, std::size_t k);
inline Expr operator^(const Expr& a, const Expr& b) { return Expr::meet({a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::compose({a, b}); }

/// alpha ^ (C_1 o ... o C_m) <= rhs, where each C_i is the meet of a set of
/// variables.
struct InclusionScheme {
  char alpha = 'a';
  std::vector<std::set<char>> chain;
  Expr rhs;

  Expr lhs() const;
  std::string to_string() const;
};

/// Grammar: expr := term ('*' term)*, term := postfix ('^' postfix)*,
/// postfix := atom '\''*, atom := letter | '0' | '(' expr ')'.
Expr parse_expr(std::string_view text);
/// `LHS <= RHS`; LHS must have the restricted shape, otherwise InputError
/// with a shape diagnostic.
InclusionScheme parse_inclusion(std::string_view text);
/// Validates the restricted shape of an already-built left side.
InclusionScheme make_scheme(const Expr& lhs, Expr rhs);

/// Value of a relation variable: a congruence (block array) or an arbitrary
/// relation.
class RelValue {
 public:
  RelValue(Congruence c) : value_(std::move(c)) {}  // NOLINT
  RelValue(BinRel r);                               // NOLINT

  std::size_t size() const;
  Bitset image(const Bitset& s, bool conv) const;
  BinRel to_relation() const;

 private:
  std::variant<Congruence, BinRel> value_;
  BinRel transpose_;
};

using RelEnv = std::map<char, RelValue>;

/// Image of a set under the relation denoted by `e` (or its converse).
Bitset image(const Expr& e, const RelEnv& env, const Bitset& s, bool conv = false);
/// Whether (a,b) lies in the relation denoted by `e`.
bool contains(const Expr& e, const RelEnv& env, std::size_t a, std::size_t b);
/// Full matrix of `e`, by relation-algebra operations on BinRel.
BinRel evaluate(const Expr& e, const RelEnv& env);

/// When `e` is a composition, elements e_0=a,...,e_r=b passing through each
/// top-level factor, choosing the least admissible element at each step.
/// Empty when (a,b) is not in `e`.
std::vector<std::size_t> composition_path(const Expr& e, const RelEnv& env, std::size_t a,
                                          std::size_t b);

}  // namespace cds
