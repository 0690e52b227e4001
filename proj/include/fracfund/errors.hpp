#pragma once

#include <stdexcept>
#include <string>

namespace fracfund {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Grid shapes or endpoints that do not fit together.
class GridError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration ran out of budget before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Implicit step matrix (Id - w A) could not be inverted; refine the grid.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Floating-point overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A method was asked to run on a problem it does not apply to.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracfund
