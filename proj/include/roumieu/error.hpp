#pragma once

#include <stdexcept>
#include <string>

namespace roumieu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree (multi-index length, point length, ...).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument violates the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A named precondition of a verification routine does not hold.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string name, const std::string& detail)
      : Error("precondition '" + name + "' failed: " + detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Malformed input document (symbol file, table file, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace roumieu
