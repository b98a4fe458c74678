#pragma once

#include <stdexcept>
#include <string>

namespace stablecut {

// Every failure surfaces as an exception carrying a human-readable diagnostic.
// Callers that need status codes (the CLI) translate at the boundary.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Parse or validation failure of an instance / parameter.
struct instance_error : error {
  using error::error;
};

// An enumeration oracle refused an input above its size cap.
struct size_cap_error : error {
  using error::error;
};

// A numeric solver failed to meet its convergence contract.
struct solver_error : error {
  using error::error;
};

// A rejection-sampling generator exhausted its attempt budget.
struct generation_error : error {
  using error::error;
};

// An internal invariant was violated; this is a bug signal, never expected.
struct internal_error : error {
  using error::error;
};

}  // namespace stablecut
