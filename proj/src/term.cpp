#include "cds/term.hpp"

#include <algorithm>
#include <cctype>

#include "cds/error.hpp"

namespace cds {

Term Term::var(std::size_t index) {
  Term t;
  t.is_var_ = true;
  t.index_ = index;
  return t;
}

Term Term::node(std::string symbol, std::vector<Term> children) {
  Term t;
  t.is_var_ = false;
  t.symbol_ = std::move(symbol);
  t.children_ = std::move(children);
  return t;
}

std::size_t Term::variable_bound() const {
  if (is_var_) return index_ + 1;
  std::size_t bound = 0;
  for (const auto& c : children_) bound = std::max(bound, c.variable_bound());
  return bound;
}

std::size_t Term::node_count() const {
  std::size_t count = 1;
  for (const auto& c : children_) count += c.node_count();
  return count;
}

std::string Term::to_string() const {
  if (is_var_) return "x" + std::to_string(index_);
  std::string out = symbol_;
  out += '(';
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i) out += ',';
    out += children_[i].to_string();
  }
  out += ')';
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  Term term() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a symbol or variable");
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Term> children;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return Term::node(name, {});
      }
      for (;;) {
        children.push_back(term());
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated argument list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      return Term::node(name, std::move(children));
    }
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return Term::var(std::stoul(name.substr(1)));
    return Term::node(name, {});
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("term: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

}  // namespace cds

namespace cds {

Term substitute(const Term& t, const std::vector<Term>& images) {
  if (t.is_var()) {
    if (t.var_index() >= images.size())
      throw InputError("substitute: no image for x" + std::to_string(t.var_index()));
    return images[t.var_index()];
  }
  std::vector<Term> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) children.push_back(substitute(c, images));
  return Term::node(t.symbol(), std::move(children));
}

}  // namespace cds
