#pragma once

#include <stdexcept>
#include <string>

namespace hyperarr {

// Base of every error the library raises. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit (non-square determinant, mismatched variable counts).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input data violating a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Structured spec that cannot be realized (duplicate ratios, zero coefficients).
class InvalidSpecError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Parameters outside what rational arithmetic can realize.
class UnsupportedParameterError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Arrangement lacks a coordinate hyperplane required by a structured routine.
class NotCompleteError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Input larger than the desk-scale guards allow.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An internal identity failed. Never expected to fire.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperarr
