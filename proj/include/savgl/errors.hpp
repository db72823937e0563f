#pragma once

#include <stdexcept>
#include <string>

namespace savgl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a numerical invariant fails at run time (as opposed to a
/// configuration problem caught up front).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Configuration or precondition problem detectable before stepping.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// -- scheme-parameter errors --------------------------------------------

class DegenerateParams : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateLeadingCoefficient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DiscriminantNegative : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PreconditionViolated : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedCase : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// -- spectral errors ----------------------------------------------------

class NotConjugateSymmetric : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GridTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadGrid : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// -- model errors -------------------------------------------------------

class BadEpsilon : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadShift : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonpositiveRadicand : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonpositiveShiftedEnergy : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSolve : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// -- cli errors ---------------------------------------------------------

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace savgl
