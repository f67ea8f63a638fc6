#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

/// Base class for all library errors.  Subclasses map onto process exit
/// codes at the CLI boundary: validation 2, numerical 3, I/O 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad inputs: malformed parameters, schema violations, domain errors
/// detectable before any arithmetic runs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation started from valid inputs but could not be completed at
/// the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Linear system condition estimate beyond the usable threshold.
class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The precision ladder ran out of mantissa bits before the target
/// tolerance was met.
class PrecisionExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Truncated Laurent tail too large: the requested mode count cannot
/// represent the solution.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fixed-point iteration outside its contraction regime.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation point too close to the jump contour for the series
/// representation to be trusted.
class NearContourError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Computed solution violates a structural identity (symmetry, realness)
/// beyond tolerance.
class StructureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Filesystem and serialization failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlse
