#pragma once

#include <stdexcept>
#include <string>

namespace sympspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected before any computation: wrong shape, not symmetric, not
/// positive definite, broken symplectic relations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation ran but its output violates a residual or convergence
/// contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sympspec
