// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace subgrad {

/// Bad arguments to an operation (dimension mismatch, out-of-range parameter).
struct invalid_input_error : std::invalid_argument {
  explicit invalid_input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A run/suite configuration that violates a documented precondition.
struct configuration_error : std::invalid_argument {
  explicit configuration_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown: non-finite values, divergence, quadrature budget exceeded.
struct numeric_failure_error : std::runtime_error {
  explicit numeric_failure_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subgrad
