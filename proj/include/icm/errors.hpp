#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icm {

// Every library failure derives from Error so callers (and the CLI) can map
// categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a structural requirement (range, ordering, zero slope...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A mathematical hypothesis of the requested operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Raised when a result contradicts a guaranteed property; indicates a bug or
// inputs outside the supported class.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace icm
