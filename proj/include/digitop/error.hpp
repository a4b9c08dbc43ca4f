#pragma once

#include <stdexcept>
#include <string>

namespace digitop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A map that was required to be continuous is not.
class DiscontinuousMap : public Error {
 public:
  using Error::Error;
};

/// A self-map has no approximate fixed point (possible only off the AFPP).
class NoApproximateFixedPoint : public Error {
 public:
  using Error::Error;
};

/// A search hit its vertex or node budget before finishing.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A constructive finder produced a vertex that failed its own runtime check.
/// Seeing this means an implementation bug or a broken base finder.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace digitop
