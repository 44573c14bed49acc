#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number of the offending record.
class ParseError : public Error {
 public:
  ParseError(std::uint64_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::uint64_t line() const noexcept { return line_; }

 private:
  std::uint64_t line_;
};

/// Corrupt or incompatible snapshot / artifact file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Unknown vertex, key, or theme.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (e.g. co-citation of a vertex with itself).
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqrank
