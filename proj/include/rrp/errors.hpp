#pragma once

#include <stdexcept>
#include <string>

namespace rrp {

// Exit-code classes used by the CLI: usage/config = 1, data = 2, invariant = 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration, bad flag value, or violated numeric precondition on a
/// user-supplied parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data that cannot be parsed or does not satisfy an operation's
/// precondition (single-class corpus, duplicate ids, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Something the library guarantees did not hold. Indicates a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed input at a known line of a text file.
class ParseError : public DataError {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace rrp
