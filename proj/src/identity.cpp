#include "cds/identity.hpp"

#include <cctype>

#include "cds/error.hpp"

namespace cds {

Expr Expr::var(char name) {
  Expr e;
  e.kind_ = Kind::Var;
  e.name_ = name;
  return e;
}

Expr Expr::diagonal() { return Expr(); }

Expr Expr::meet(std::vector<Expr> children) {
  if (children.empty()) throw InputError("meet of no relations");
  if (children.size() == 1) return std::move(children.front());
  Expr e;
  e.kind_ = Kind::Meet;
  e.children_ = std::move(children);
  return e;
}

Expr Expr::compose(std::vector<Expr> children) {
  if (children.empty()) return diagonal();
  if (children.size() == 1) return std::move(children.front());
  Expr e;
  e.kind_ = Kind::Compose;
  e.children_ = std::move(children);
  return e;
}

Expr Expr::converse(Expr child) {
  Expr e;
  e.kind_ = Kind::Converse;
  e.children_.push_back(std::move(child));
  return e;
}

std::set<char> Expr::variables() const {
  std::set<char> out;
  if (kind_ == Kind::Var) out.insert(name_);
  for (const auto& c : children_) out.merge(c.variables());
  return out;
}

std::string Expr::to_string() const {
  switch (kind_) {
    case Kind::Var:
      return std::string(1, name_);
    case Kind::Diagonal:
      return "0";
    case Kind::Converse: {
      const Expr& c = children_[0];
      bool paren = c.kind_ == Kind::Meet || c.kind_ == Kind::Compose;
      return (paren ? "(" + c.to_string() + ")" : c.to_string()) + "'";
    }
    case Kind::Meet: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += '^';
        const Expr& c = children_[i];
        bool paren = c.kind_ == Kind::Meet || c.kind_ == Kind::Compose;
        out += paren ? "(" + c.to_string() + ")" : c.to_string();
      }
      return out;
    }
    case Kind::Compose: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += '*';
        const Expr& c = children_[i];
        out += c.kind_ == Kind::Compose ? "(" + c.to_string() + ")" : c.to_string();
      }
      return out;
    }
  }
  return {};
}

Expr alternating(const Expr& a, const Expr& b, std::size_t k) {
  std::vector<Expr> factors;
  for (std::size_t i = 0; i < k; ++i) factors.push_back(i % 2 == 0 ? a : b);
  return Expr::compose(std::move(factors));
}

Expr InclusionScheme::lhs() const {
  std::vector<Expr> factors;
  for (const auto& c : chain) {
    std::vector<Expr> vs;
    for (char v : c) vs.push_back(Expr::var(v));
    factors.push_back(Expr::meet(std::move(vs)));
  }
  return Expr::meet({Expr::var(alpha), Expr::compose(std::move(factors))});
}

std::string InclusionScheme::to_string() const { return lhs().to_string() + " <= " + rhs.to_string(); }

// ---------------------------------------------------------------------------

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  std::pair<Expr, Expr> parse_inclusion() {
    Expr l = expr();
    skip_ws();
    if (text_.substr(pos_, 2) != "<=") fail("expected '<='");
    pos_ += 2;
    Expr r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return {std::move(l), std::move(r)};
  }

 private:
  Expr expr() {
    std::vector<Expr> fs{term()};
    while (peek() == '*') {
      ++pos_;
      fs.push_back(term());
    }
    return Expr::compose(std::move(fs));
  }

  Expr term() {
    std::vector<Expr> fs{postfix()};
    while (peek() == '^') {
      ++pos_;
      fs.push_back(postfix());
    }
    return Expr::meet(std::move(fs));
  }

  Expr postfix() {
    Expr e = atom();
    while (peek() == '\'') {
      ++pos_;
      e = Expr::converse(std::move(e));
    }
    return e;
  }

  Expr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '0') {
      ++pos_;
      return Expr::diagonal();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        fail("variables are single letters");
      return Expr::var(c);
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("identity: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void flatten(const Expr& e, Expr::Kind kind, std::vector<Expr>& out) {
  if (e.kind() == kind) {
    for (const auto& c : e.children()) flatten(c, kind, out);
  } else {
    out.push_back(e);
  }
}

[[noreturn]] void shape_error(const std::string& detail) {
  throw InputError("identity: left side must have the shape a^(C1*...*Cm), each Ci a meet of "
                   "variables: " +
                   detail);
}

std::set<char> factor_variables(const Expr& f) {
  std::vector<Expr> parts;
  flatten(f, Expr::Kind::Meet, parts);
  std::set<char> vs;
  for (const auto& p : parts) {
    if (p.kind() != Expr::Kind::Var) shape_error("factor '" + f.to_string() + "' is not a meet of variables");
    vs.insert(p.name());
  }
  return vs;
}

}  // namespace

Expr parse_expr(std::string_view text) { return ExprParser(text).parse_all(); }

InclusionScheme make_scheme(const Expr& lhs, Expr rhs) {
  std::vector<Expr> parts;
  flatten(lhs, Expr::Kind::Meet, parts);
  if (parts.size() < 2) shape_error("no outer meet");
  InclusionScheme s;
  std::size_t alpha_at = parts.size();
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].kind() == Expr::Kind::Var) {
      alpha_at = i;
      break;
    }
  if (alpha_at == parts.size()) shape_error("no outer variable");
  s.alpha = parts[alpha_at].name();
  std::vector<Expr> rest;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (i != alpha_at) rest.push_back(parts[i]);

  if (rest.size() == 1 && rest[0].kind() == Expr::Kind::Compose) {
    std::vector<Expr> factors;
    flatten(rest[0], Expr::Kind::Compose, factors);
    for (const auto& f : factors) s.chain.push_back(factor_variables(f));
  } else {
    std::set<char> vs;
    for (const auto& r : rest) {
      if (r.kind() != Expr::Kind::Var) shape_error("'" + r.to_string() + "' is not a variable");
      vs.insert(r.name());
    }
    s.chain.push_back(vs);
  }
  std::set<char> known{s.alpha};
  for (const auto& c : s.chain) known.insert(c.begin(), c.end());
  for (char v : rhs.variables())
    if (!known.count(v))
      throw InputError(std::string("identity: right-side variable '") + v +
                       "' does not occur on the left side");
  s.rhs = std::move(rhs);
  return s;
}

InclusionScheme parse_inclusion(std::string_view text) {
  auto [l, r] = ExprParser(text).parse_inclusion();
  return make_scheme(l, std::move(r));
}

// ---------------------------------------------------------------------------

RelValue::RelValue(BinRel r) : value_(std::move(r)) {
  transpose_ = converse(std::get<BinRel>(value_));
}

std::size_t RelValue::size() const {
  return std::visit([](const auto& v) { return v.size(); }, value_);
}

Bitset RelValue::image(const Bitset& s, bool conv) const {
  if (const auto* c = std::get_if<Congruence>(&value_)) return c->image(s);
  return conv ? transpose_.image(s) : std::get<BinRel>(value_).image(s);
}

BinRel RelValue::to_relation() const {
  if (const auto* c = std::get_if<Congruence>(&value_)) return c->to_relation();
  return std::get<BinRel>(value_);
}

namespace {

const RelValue& lookup(const RelEnv& env, char name) {
  auto it = env.find(name);
  if (it == env.end()) throw InputError(std::string("unbound relation variable '") + name + "'");
  return it->second;
}

std::size_t universe(const RelEnv& env) {
  if (env.empty()) throw InputError("empty relation environment");
  return env.begin()->second.size();
}

}  // namespace

Bitset image(const Expr& e, const RelEnv& env, const Bitset& s, bool conv) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      return lookup(env, e.name()).image(s, conv);
    case Expr::Kind::Diagonal:
      return s;
    case Expr::Kind::Converse:
      return image(e.children()[0], env, s, !conv);
    case Expr::Kind::Compose: {
      Bitset cur = s;
      const auto& cs = e.children();
      if (!conv) {
        for (const auto& c : cs) cur = image(c, env, cur, false);
      } else {
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) cur = image(*it, env, cur, true);
      }
      return cur;
    }
    case Expr::Kind::Meet: {
      Bitset out(s.size());
      s.for_each([&](std::size_t u) {
        Bitset single(s.size());
        single.set(u);
        Bitset acc = image(e.children()[0], env, single, conv);
        for (std::size_t i = 1; i < e.children().size() && !acc.none(); ++i)
          acc &= image(e.children()[i], env, single, conv);
        out |= acc;
      });
      return out;
    }
  }
  return s;
}

bool contains(const Expr& e, const RelEnv& env, std::size_t a, std::size_t b) {
  Bitset s(universe(env));
  s.set(a);
  return image(e, env, s).test(b);
}

BinRel evaluate(const Expr& e, const RelEnv& env) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      return lookup(env, e.name()).to_relation();
    case Expr::Kind::Diagonal:
      return BinRel::diagonal(universe(env));
    case Expr::Kind::Converse:
      return converse(evaluate(e.children()[0], env));
    case Expr::Kind::Compose: {
      BinRel r = evaluate(e.children()[0], env);
      for (std::size_t i = 1; i < e.children().size(); ++i) r = compose(r, evaluate(e.children()[i], env));
      return r;
    }
    case Expr::Kind::Meet: {
      BinRel r = evaluate(e.children()[0], env);
      for (std::size_t i = 1; i < e.children().size(); ++i) r = meet(r, evaluate(e.children()[i], env));
      return r;
    }
  }
  return {};
}

std::vector<std::size_t> composition_path(const Expr& e, const RelEnv& env, std::size_t a,
                                          std::size_t b) {
  const std::size_t n = universe(env);
  std::vector<Expr> factors;
  if (e.kind() == Expr::Kind::Compose)
    factors = e.children();
  else
    factors.push_back(e);
  std::vector<Bitset> layers;
  layers.emplace_back(n);
  layers.back().set(a);
  for (const auto& f : factors) layers.push_back(image(f, env, layers.back()));
  if (!layers.back().test(b)) return {};
  std::vector<std::size_t> path(factors.size() + 1);
  path.back() = b;
  for (std::size_t i = factors.size(); i > 0; --i) {
    Bitset target(n);
    target.set(path[i]);
    Bitset pre = image(factors[i - 1], env, target, true);
    pre &= layers[i - 1];
    std::size_t least = n;
    pre.for_each([&](std::size_t u) { least = std::min(least, u); });
    if (least == n) throw InternalError("composition_path: broken layer");
    path[i - 1] = least;
  }
  return path;
}

}  // namespace cds
