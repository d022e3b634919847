#pragma once

#include <stdexcept>
#include <string>

namespace grassgeo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a precondition (wrong shape, not a projection, not tangent, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to differently shaped algebras.
class ShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Two independent evaluation routes disagree beyond tolerance. Always a bug or
/// a numerically degenerate input, never an expected outcome.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace grassgeo
