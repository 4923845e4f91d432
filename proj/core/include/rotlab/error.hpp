#pragma once

#include <stdexcept>
#include <string>

namespace rotlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic on cochain values left the int64 range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Caller passed something outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iteration, refinement or estimate did not meet its budget or tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotlab
