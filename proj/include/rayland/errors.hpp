#pragma once

#include <stdexcept>
#include <string>

namespace rayland {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical input does not hold (bad angle, invalid
/// portrait, level below the critical potential, point on a boundary, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Branch of a multivalued function cannot be decided without a witness.
class BranchError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Enumeration or search exceeded a configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rayland
