#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cds/term.hpp"

namespace cds {

using Element = std::uint32_t;

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// Ordered list of operation symbols. The order is canonical: every
/// construction preserves it and tables are stored in the same order.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);

  const std::vector<OpSymbol>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  const OpSymbol& operator[](std::size_t i) const { return ops_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<OpSymbol> ops_;
};

/// Universe {0..n-1} with one table per operation. Tables are row-major with
/// the first argument most significant, so f(a,b) of a binary op lives at
/// index a*n+b.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, std::size_t size, Signature signature,
                std::vector<std::vector<Element>> tables);

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  const Signature& signature() const { return signature_; }
  const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }

  Element apply(std::size_t op, std::span<const Element> args) const;

 private:
  std::string name_;
  std::size_t size_;
  Signature signature_;
  std::vector<std::vector<Element>> tables_;
};

/// Number of entries n^arity of a table, throwing if it does not fit.
std::size_t table_length(std::size_t n, std::size_t arity);

FiniteAlgebra parse_algebra(std::string_view text);
FiniteAlgebra load_algebra(const std::string& path);
std::string serialize_algebra(const FiniteAlgebra& a);

Element eval_term(const FiniteAlgebra& a, const Term& t, std::span<const Element> assignment);

/// True iff lhs = rhs under every assignment of `variables` variables in
/// every listed algebra. An identity holds in HSP of the list iff it holds in
/// each member.
bool holds_identity(std::span<const FiniteAlgebra> algebras, const Term& lhs, const Term& rhs,
                    std::optional<std::size_t> variables = std::nullopt);

/// Universe A x B with (a,b) encoded as a*|B|+b; operations coordinatewise.
FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Universe A x B over the disjoint union of the signatures. An operation of
/// A acts on first coordinates and as first-argument projection on second
/// coordinates; symmetrically for B. `rename_b` renames B's symbols.
FiniteAlgebra nonindexed_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                 const std::map<std::string, std::string>& rename_b = {});

/// Restriction to the operations named in `keep`, in signature order.
FiniteAlgebra reduct(const FiniteAlgebra& a, const std::vector<std::string>& keep);

/// Where an element of a generated subuniverse came from.
struct Provenance {
  /// Index of the seed, or npos for elements produced by an operation.
  std::size_t seed = npos;
  std::size_t op = 0;
  std::vector<std::size_t> operands;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  bool is_seed() const { return seed != npos; }
};

struct GeneratedSet {
  std::vector<Element> elements;
  std::vector<Provenance> provenance;
};

/// Least subuniverse containing `seed`, in deterministic discovery order:
/// seeds first, then round by round with ops in signature order and operand
/// tuples in row-major order.
GeneratedSet subalgebra_generate(const FiniteAlgebra& a, std::span<const Element> seed);

}  // namespace cds
