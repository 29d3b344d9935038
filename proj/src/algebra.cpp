#include "cds/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cds/closure.hpp"
#include "cds/error.hpp"

namespace cds {

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.name.empty()) throw InputError("signature: empty operation symbol");
    if (!seen.insert(op.name).second)
      throw InputError("signature: duplicate operation symbol '" + op.name + "'");
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

std::size_t table_length(std::size_t n, std::size_t arity) {
  std::size_t len = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (n != 0 && len > (std::size_t{1} << 40) / n)
      throw InputError("table for arity " + std::to_string(arity) + " over " + std::to_string(n) +
                       " elements is too large");
    len *= n;
  }
  return len;
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size, Signature signature,
                             std::vector<std::vector<Element>> tables)
    : name_(std::move(name)),
      size_(size),
      signature_(std::move(signature)),
      tables_(std::move(tables)) {
  if (size_ == 0) throw InputError("algebra '" + name_ + "': size must be positive");
  if (tables_.size() != signature_.size())
    throw InputError("algebra '" + name_ + "': one table per operation required");
  for (std::size_t op = 0; op < tables_.size(); ++op) {
    if (tables_[op].size() != table_length(size_, signature_[op].arity))
      throw InputError("algebra '" + name_ + "': wrong table length for '" +
                       signature_[op].name + "'");
    for (Element e : tables_[op])
      if (e >= size_)
        throw InputError("algebra '" + name_ + "': element out of range in '" +
                         signature_[op].name + "'");
  }
}

Element FiniteAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  if (args.size() != signature_[op].arity)
    throw InputError("arity mismatch for '" + signature_[op].name + "'");
  std::size_t code = 0;
  for (Element a : args) code = code * size_ + a;
  return tables_[op][code];
}

// ---------------------------------------------------------------------------
// .alg format

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '#')
        ++i;
      out.push_back({std::string(text.substr(start, i - start)), line});
    }
  }
  return out;
}

std::size_t parse_count(const Token& t, const char* what) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(t.line, std::string("expected ") + what + ", got '" + t.text + "'");
  try {
    return std::stoull(t.text);
  } catch (const std::exception&) {
    throw ParseError(t.line, std::string(what) + " too large");
  }
}

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text) {
  auto toks = tokenize(text);
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const Token& {
    if (pos >= toks.size()) {
      std::size_t line = toks.empty() ? 1 : toks.back().line;
      throw ParseError(line, std::string("unexpected end of input, expected ") + what);
    }
    return toks[pos++];
  };

  const Token& kw = next("'algebra'");
  if (kw.text != "algebra") throw ParseError(kw.line, "malformed header: expected 'algebra <name>'");
  const Token& name_tok = next("algebra name");
  if (name_tok.line != kw.line) throw ParseError(kw.line, "malformed header: missing algebra name");

  const Token& size_kw = next("'size'");
  if (size_kw.text != "size") throw ParseError(size_kw.line, "malformed header: expected 'size <n>'");
  const Token& size_tok = next("size");
  std::size_t n = parse_count(size_tok, "size");
  if (n == 0) throw ParseError(size_tok.line, "size must be positive");

  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  std::set<std::string> seen;
  while (pos < toks.size()) {
    const Token& op_kw = next("'op'");
    if (op_kw.text != "op")
      throw ParseError(op_kw.line, "expected 'op <symbol> <arity>', got '" + op_kw.text + "'" +
                                       (ops.empty() ? "" : " (wrong table length?)"));
    const Token& sym = next("operation symbol");
    if (!seen.insert(sym.text).second)
      throw ParseError(sym.line, "duplicate operation symbol '" + sym.text + "'");
    std::size_t arity = parse_count(next("arity"), "arity");
    std::size_t len = table_length(n, arity);
    std::vector<Element> table;
    table.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (pos >= toks.size() || toks[pos].text == "op")
        throw ParseError(pos < toks.size() ? toks[pos].line : toks.back().line,
                         "wrong table length for '" + sym.text + "': expected " +
                             std::to_string(len) + " entries, got " + std::to_string(i));
      const Token& e = toks[pos++];
      std::size_t v = parse_count(e, "table entry");
      if (v >= n)
        throw ParseError(e.line, "element out of range: " + e.text + " (size " +
                                     std::to_string(n) + ")");
      table.push_back(static_cast<Element>(v));
    }
    ops.push_back({sym.text, arity});
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(name_tok.text, n, Signature(std::move(ops)), std::move(tables));
}

FiniteAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_algebra(ss.str());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << a.name() << "\n";
  out << "size " << a.size() << "\n";
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const auto& sym = a.signature()[op];
    out << "op " << sym.name << " " << sym.arity << "\n";
    const auto& t = a.table(op);
    std::size_t row = sym.arity == 0 ? 1 : a.size();
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << t[i] << ((i + 1) % row == 0 ? "\n" : " ");
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// terms and identities

namespace {

Element eval_resolved(const FiniteAlgebra& a, const Term& t, std::span<const Element> assignment) {
  if (t.is_var()) {
    if (t.var_index() >= assignment.size())
      throw InputError("unbound variable x" + std::to_string(t.var_index()));
    return assignment[t.var_index()];
  }
  auto op = a.signature().index_of(t.symbol());
  if (!op) throw InputError("unknown operation symbol '" + t.symbol() + "'");
  if (a.signature()[*op].arity != t.children().size())
    throw InputError("arity mismatch for '" + t.symbol() + "'");
  std::size_t code = 0;
  for (const auto& c : t.children()) code = code * a.size() + eval_resolved(a, c, assignment);
  return a.table(*op)[code];
}

}  // namespace

Element eval_term(const FiniteAlgebra& a, const Term& t, std::span<const Element> assignment) {
  for (Element e : assignment)
    if (e >= a.size()) throw InputError("assignment value out of range");
  return eval_resolved(a, t, assignment);
}

bool holds_identity(std::span<const FiniteAlgebra> algebras, const Term& lhs, const Term& rhs,
                    std::optional<std::size_t> variables) {
  if (algebras.empty()) return true;
  const Signature& sig = algebras.front().signature();
  for (const auto& a : algebras)
    if (a.signature() != sig) throw InputError("holds_identity: signature mismatch");
  std::size_t nv = variables.value_or(std::max(lhs.variable_bound(), rhs.variable_bound()));
  if (lhs.variable_bound() > nv || rhs.variable_bound() > nv)
    throw InputError("holds_identity: term uses more variables than declared");
  for (const auto& a : algebras) {
    std::vector<Element> asg(nv, 0);
    for (;;) {
      if (eval_resolved(a, lhs, asg) != eval_resolved(a, rhs, asg)) return false;
      std::size_t i = nv;
      while (i > 0 && ++asg[i - 1] == a.size()) asg[--i] = 0;
      if (i == 0) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// products

namespace {

// Decodes `code` (row-major, first digit most significant) into `arity` digits.
void decode(std::size_t code, std::size_t base, std::span<Element> out) {
  for (std::size_t i = out.size(); i > 0; --i) {
    out[i - 1] = static_cast<Element>(code % base);
    code /= base;
  }
}

}  // namespace

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature() != b.signature()) throw InputError("direct_product: signature mismatch");
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const std::size_t r = a.signature()[op].arity;
    std::size_t len = table_length(n, r);
    std::vector<Element> table(len);
    std::vector<Element> args(r), xs(r), ys(r);
    for (std::size_t code = 0; code < len; ++code) {
      decode(code, n, args);
      for (std::size_t i = 0; i < r; ++i) {
        xs[i] = static_cast<Element>(args[i] / nb);
        ys[i] = static_cast<Element>(args[i] % nb);
      }
      table[code] = static_cast<Element>(a.apply(op, xs) * nb + b.apply(op, ys));
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(a.name() + "*" + b.name(), n, a.signature(), std::move(tables));
}

FiniteAlgebra nonindexed_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                 const std::map<std::string, std::string>& rename_b) {
  std::vector<OpSymbol> ops = a.signature().ops();
  for (auto sym : b.signature().ops()) {
    if (auto it = rename_b.find(sym.name); it != rename_b.end()) sym.name = it->second;
    if (a.signature().index_of(sym.name))
      throw InputError("nonindexed_product: operation symbol '" + sym.name +
                       "' occurs in both signatures; supply a rename");
    ops.push_back(sym);
  }
  for (const auto& sym : ops)
    if (sym.arity == 0)
      throw InputError("nonindexed_product: nullary operation '" + sym.name +
                       "' has no first-argument projection");
  Signature sig(ops);  // rejects clashes introduced by the rename map

  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  const std::size_t ka = a.signature().size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    std::size_t len = table_length(n, r);
    std::vector<Element> table(len);
    std::vector<Element> args(r), xs(r), ys(r);
    for (std::size_t code = 0; code < len; ++code) {
      decode(code, n, args);
      for (std::size_t i = 0; i < r; ++i) {
        xs[i] = static_cast<Element>(args[i] / nb);
        ys[i] = static_cast<Element>(args[i] % nb);
      }
      Element x = op < ka ? a.apply(op, xs) : xs[0];
      Element y = op < ka ? ys[0] : b.apply(op - ka, ys);
      table[code] = static_cast<Element>(x * nb + y);
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(a.name() + "+" + b.name(), n, std::move(sig), std::move(tables));
}

FiniteAlgebra reduct(const FiniteAlgebra& a, const std::vector<std::string>& keep) {
  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  for (const auto& name : keep)
    if (!a.signature().index_of(name)) throw InputError("reduct: unknown symbol '" + name + "'");
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    if (std::find(keep.begin(), keep.end(), a.signature()[op].name) == keep.end()) continue;
    ops.push_back(a.signature()[op]);
    tables.push_back(a.table(op));
  }
  return FiniteAlgebra(a.name(), a.size(), Signature(std::move(ops)), std::move(tables));
}

GeneratedSet subalgebra_generate(const FiniteAlgebra& a, std::span<const Element> seed) {
  Closure closure(a.signature(), {&a});
  for (Element e : seed) closure.add_seed(std::span<const Element>(&e, 1));
  closure.run();
  GeneratedSet out;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    out.elements.push_back(closure.tuple(i)[0]);
    out.provenance.push_back(closure.provenance(i));
  }
  return out;
}

}  // namespace cds
