#pragma once

#include <stdexcept>
#include <string>

namespace duality {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible or invalid dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An enumeration or matrix dimension exceeds a configured cap.
class CapExceededError : public Error {
  public:
    using Error::Error;
};

/// A matrix expected to be positive semidefinite has an eigenvalue below the floor.
class NotPsdError : public Error {
  public:
    using Error::Error;
};

/// Probabilities drifted further from a normalized distribution than allowed.
class NonPhysicalError : public Error {
  public:
    using Error::Error;
};

/// A measure with a 1/(R-1) normalization was requested for R = 1.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// Fermionic construction incompatible with the exclusion principle.
class PauliError : public Error {
  public:
    using Error::Error;
};

/// A computed quantity violates an inequality that must hold up to tolerance.
class InvariantViolationError : public Error {
  public:
    using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace duality
