#pragma once

#include <stdexcept>

namespace ead {

// Degenerate or impossible computation (empty set, zero variance, shortfall).
// The CLI maps this to exit code 1.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File and parse problems. The CLI maps this to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ead
