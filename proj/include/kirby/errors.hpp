#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kirby {

// Bad input: malformed documents, parameters outside a regime, move
// preconditions that do not hold.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed. Never expected on valid input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A move script step whose precondition failed.
class ReplayError : public InputError {
 public:
  ReplayError(std::size_t step, const std::string& what)
      : InputError("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace kirby
