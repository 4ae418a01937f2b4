#pragma once

#include <stdexcept>
#include <string>

namespace ceshock {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input errors: bad shock data, bad flux, bad settings. The CLI maps these to
/// exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class AdmissibilityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class SubcharacteristicError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ConvexityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class FluxMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MarginError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ShockMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Numerical failures of a solver. The CLI maps these to exit code 3.
class SolverError : public Error {
 public:
  using Error::Error;
};

class DegenerateDiffusion : public SolverError {
 public:
  using SolverError::SolverError;
};

class BracketError : public SolverError {
 public:
  using SolverError::SolverError;
};

class DiscriminantError : public SolverError {
 public:
  using SolverError::SolverError;
};

class TrajectoryEscape : public SolverError {
 public:
  using SolverError::SolverError;
};

class SignError : public SolverError {
 public:
  using SolverError::SolverError;
};

class OverflowError : public SolverError {
 public:
  using SolverError::SolverError;
};

class RootFindingError : public SolverError {
 public:
  using SolverError::SolverError;
};

class IntegrationError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace ceshock
