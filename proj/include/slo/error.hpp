#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL or file input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a semantic rule (duplicate symbol, bad arity, ...).
class SemanticError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A configured resource cap would be exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

} // namespace slo
