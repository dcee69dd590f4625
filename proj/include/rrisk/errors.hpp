#pragma once

#include <stdexcept>
#include <string>

namespace rrisk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input. `field()` names the offending parameter.
class InvalidInput : public Error {
 public:
  InvalidInput(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A requested moment does not exist for the distribution (e.g. Student-t
/// with too few degrees of freedom).
class MomentUndefined : public Error {
 public:
  using Error::Error;
};

/// The dual objective is +inf for every admissible lambda, so the robust
/// functional is identically +inf.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A bracket could not be established within the doubling budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Linear penalization slope does not exceed max{alpha, 1 - alpha}.
class DeltaTooSmall : public Error {
 public:
  using Error::Error;
};

/// The polynomial growth bound of a loss could not be certified against the
/// transport cost exponent.
class UncertifiedGrowth : public Error {
 public:
  using Error::Error;
};

}  // namespace rrisk
