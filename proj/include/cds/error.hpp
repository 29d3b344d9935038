#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cds {

/// Malformed input: bad files, bad DSL text, mismatched signatures or arities.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line of the offending input.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A configured size cap or enumeration budget was hit.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::size_t partial() const { return partial_; }

 private:
  std::size_t partial_;
};

/// A postcondition the library verifies itself did not hold.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cds
