#pragma once

#include <stdexcept>
#include <string>

namespace qws {

// Coin state or composite component that is not unit-norm.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Construction produced (or was given) a state with zero total norm.
class EmptyStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A position exceeded the configured walk-space bound.
class SpanLimitError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised when a state fails the translational-invariance constraints where
// a walk-state is required.
class NotShrinkableError : public std::runtime_error {
 public:
  NotShrinkableError(const std::string& what, double max_violation)
      : std::runtime_error(what), max_violation_(max_violation) {}
  double max_violation() const noexcept { return max_violation_; }

 private:
  double max_violation_;
};

class UnsupportedStepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BandLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signals a broken internal identity; never expected on valid inputs.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qws
