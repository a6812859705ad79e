#pragma once

#include <stdexcept>
#include <string>

namespace wus {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a type invariant or an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Embedded chain has no unique stationary law (P23 or P34 vanished).
class SingularChain : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Delay bound cannot be met at the requested configuration.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Root finder was handed an interval without a sign change.
class NoRoot : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search found no configuration meeting the delay bound.
class EmptyFeasibleSet : public Error {
 public:
  using Error::Error;
};

/// F1 or F3 is zero to working precision, so the boundary case is ambiguous.
class DegenerateCase : public Error {
 public:
  using Error::Error;
};

}  // namespace wus
