#pragma once

#include <stdexcept>
#include <string>

namespace nlrd {

// Bad user input (config, parameters). CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown (NaN, overshoot, non-convergence). CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

}  // namespace nlrd
