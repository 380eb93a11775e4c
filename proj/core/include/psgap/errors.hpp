#pragma once

#include <stdexcept>
#include <string>

namespace psgap {

/// Bad arguments or configuration (CLI exit code 2).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A cross-checked internal identity failed; never expected on valid builds
/// (CLI exit code 1).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// A certified enclosure could not be narrowed within the precision cap
/// (CLI exit code 3). Carries the offending argument when known.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& msg, unsigned long long n = 0)
      : std::runtime_error(msg), offending(n) {}
  unsigned long long offending;
};

/// Enumeration or big-integer work would exceed the configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace psgap
