#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "fuzzyframes/linalg.hpp"

namespace fuzzyframes {

// Malformed input: bad dimensions, out-of-range parameters, unparsable data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The call is well-formed but the operation does not apply to this object
// (wrong profile, non-tight certificate, zero lower bound, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A mathematical hypothesis of a theorem fails. Carries the measured
// residual and, where one exists, a unit-norm witness vector.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, double residual, Vector witness = {})
      : std::runtime_error(what), residual_(residual), witness_(std::move(witness)) {}

  double residual() const noexcept { return residual_; }
  const Vector& witness() const noexcept { return witness_; }

 private:
  double residual_;
  Vector witness_;
};

// Frame operator is not invertible; witness spans part of its kernel.
class SingularOperatorError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

}  // namespace fuzzyframes
