#pragma once

#include <stdexcept>
#include <string>

namespace qee {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical procedure failed (quadrature non-convergence, bad residual, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An energy window selected no basis states.
class EmptyWindowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qee
