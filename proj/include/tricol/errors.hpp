#pragma once

#include <stdexcept>
#include <string>

namespace tricol {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the operation's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Zero passed to an operation that needs a positive value (logarithms, Col₃).
class ZeroValueError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed textual input.
class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Precision, step or exponent guard exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A mathematical identity that must hold was observed to fail.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A sweep was interrupted before completion.
class Cancelled : public Error {
 public:
  using Error::Error;
};

}  // namespace tricol
