#pragma once

#include <stdexcept>
#include <string>

namespace pdmse {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the model or function domain.
struct DomainError : Error {
  using Error::Error;
};

// Malformed run configuration (config file, option values).
struct ConfigError : Error {
  using Error::Error;
};

struct PoleError : Error {
  using Error::Error;
};

struct DegreeLimitError : Error {
  using Error::Error;
};

// Parameter set violates a family constraint (sign of lambda, B < A^2, ...).
struct ConstraintError : Error {
  using Error::Error;
};

struct LevelBoundError : Error {
  using Error::Error;
};

struct DivisionByZeroError : Error {
  using Error::Error;
};

struct NonNormalizableError : Error {
  using Error::Error;
};

// Grid mismatch or a grid too coarse for the requested stencil accuracy.
struct GridError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace pdmse
