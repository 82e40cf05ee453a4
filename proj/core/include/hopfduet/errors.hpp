#pragma once

#include <stdexcept>
#include <string>

namespace hopfduet {

/// Base class for all hopfduet errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid mathematical input (non-finite state, violated invariant, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A polar/reduced chart was evaluated too close to its singular locus.
struct SingularChartError : DomainError {
  using DomainError::DomainError;
};

/// Requested branch/solution does not exist for the given parameters.
struct NotAdmissibleError : DomainError {
  using DomainError::DomainError;
};

/// Iterative solver (Newton, bisection, integrator) failed to converge.
struct ConvergenceError : Error {
  using Error::Error;
};

/// Bad run configuration (schema violation, unknown keys, missing file).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hopfduet
