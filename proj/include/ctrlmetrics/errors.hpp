#pragma once

#include <stdexcept>
#include <string>

namespace ctrlmetrics {

/// Model or argument fails a structural invariant (bad dimensions, rows not
/// summing to one, ...). Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested computation would exceed a configured size cap. Exit code 3.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// The instance is outside the regime a solver is proven to handle
/// (e.g. a Markov-mode trend fed to an i.i.d.-only Riccati scheme).
class UnsupportedSchemeError : public std::runtime_error {
 public:
  explicit UnsupportedSchemeError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown that the theory rules out but floating point may not
/// (singular factorization, failed convergence checks).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ctrlmetrics
