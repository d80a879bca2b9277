#pragma once

#include <stdexcept>

namespace gstate {

/// Requested computation exceeds a configured size limit (CLI exit 3).
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to converge (CLI exit 4).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gstate
