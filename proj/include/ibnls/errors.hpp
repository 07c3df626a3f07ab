#pragma once

#include <stdexcept>
#include <string>

namespace ibnls {

// Base class for everything this library throws. Subclasses split into two
// families: invalid inputs (bad parameters, mismatched grids) and numerical
// failures (divergent iterations, non-finite states). The CLI maps the first
// family to exit code 1 and the second to exit code 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class DimensionTooSmall : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InhomogeneityOutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidGridSpec : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class GridMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class CutoffTooLarge : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DegenerateField : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateConstants : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NoConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class IndefiniteOperator : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NonFinite : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// Carries which precondition of the above-threshold comparison failed.
class HypothesesNotMet : public ValidationError {
public:
  enum class Which { energy_not_positive, energy_not_below_ground_state, kinetic_not_above_ground_state };

  HypothesesNotMet(Which which, const std::string& msg) : ValidationError(msg), which_(which) {}

  Which which() const { return which_; }

private:
  Which which_;
};

class ConfigError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

}  // namespace ibnls
