#pragma once

#include <stdexcept>

namespace minpass {

// CLI maps these to exit codes 1 / 2 / 3.

struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numerical_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct threshold_error : invalid_input {
  using invalid_input::invalid_input;
};

struct resonance_error : numerical_failure {
  using numerical_failure::numerical_failure;
};

}  // namespace minpass
