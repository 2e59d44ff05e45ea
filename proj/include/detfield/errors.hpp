#pragma once

#include <stdexcept>
#include <string>

namespace detfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was not met (bad shape, negative step, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis required by the construction is violated,
/// e.g. a Gramian with operator norm >= 1. The message names the bound.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is singular to working precision
/// (transfer-function pole, coupling too large, ...).
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its stated accuracy.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace detfield
