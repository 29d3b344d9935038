#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

/// Operation tree over a signature; leaves are variables x0, x1, ...
class Term {
 public:
  static Term var(std::size_t index);
  static Term node(std::string symbol, std::vector<Term> children);

  bool is_var() const { return is_var_; }
  std::size_t var_index() const { return index_; }
  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& children() const { return children_; }

  /// One more than the largest variable index, 0 for ground terms.
  std::size_t variable_bound() const;
  std::size_t node_count() const;

  /// Prefix notation, e.g. `meet(x0,join(x1,x2))`.
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term() = default;

  bool is_var_ = true;
  std::size_t index_ = 0;
  std::string symbol_;
  std::vector<Term> children_;
};

/// Parses the prefix notation produced by Term::to_string. Variables are
/// written `x<digits>`; nullary symbols may omit the parentheses.
Term parse_term(std::string_view text);

}  // namespace cds

namespace cds {

/// Replaces variable i by images[i].
Term substitute(const Term& t, const std::vector<Term>& images);

}  // namespace cds
