#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ksring {

/// Argument outside the mathematical domain of an operation (R <= 0, m < 1, t < 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Two fields on different grids were combined.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative or linear-algebra kernel failed to produce a result.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A time step of the solver failed; carries the step index that was being computed.
class StepFailure : public NumericalError {
public:
  StepFailure(std::size_t step, const std::string& what)
      : NumericalError("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

}  // namespace ksring
