#pragma once

#include <stdexcept>
#include <string>

namespace momentforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (Mellin strip violated, nonpositive location under -log, |t| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition of the operation does not hold (f(alpha) = 0, N < 1, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested object has no analytic form in the catalog (e.g. kappa of PowerTower).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Value left the binary64 range; retry in the log domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input contradicts the hypothesis of a classification result.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed command-line input or catalog id.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A series could not reach the requested tolerance within its term budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of panels before meeting its tolerance.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double residual)
      : Error(what + " (residual estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace momentforge
