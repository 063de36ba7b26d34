#ifndef DOFAM_ERRORS_HPP
#define DOFAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dofam {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON shape, unknown label, inconsistent sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public InputError {
 public:
  explicit UnknownLabel(const std::string& label) : InputError("unknown label: " + label) {}
};

/// Self-loop, bow, or too many nodes.
class InvalidGraph : public InputError {
 public:
  using InputError::InputError;
};

/// A separation criterion was applied to a graph class it does not cover.
class CriterionMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidTable : public InputError {
 public:
  using InputError::InputError;
};

class RosterMismatch : public InputError {
 public:
  using InputError::InputError;
};

class InvalidScm : public InputError {
 public:
  using InputError::InputError;
};

/// A family is not compatible with its reference distribution.
class Incompatible : public Error {
 public:
  using Error::Error;
};

/// A CI source cannot answer the kind of query requested.
class UnsupportedCapability : public Error {
 public:
  using Error::Error;
};

/// JSON text could not be parsed.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace dofam

#endif
