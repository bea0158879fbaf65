#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexpref {

// Base of everything the library throws for bad input or a violated contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown variable/value, malformed assignment, space mismatch.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A query whose negation falls outside the statement language.
class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// The operation needs a consistent statement set.
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lexpref
