#pragma once

#include <stdexcept>

namespace ustat {

// Invalid arguments handed to a library operation (dimension mismatch,
// out-of-range parameters, malformed grids).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical degeneracy an operation cannot resolve on its own.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A (numerically) tied observation pair fed to a kernel that requires x != y.
struct DegeneratePairError : DegeneracyError {
  using DegeneracyError::DegeneracyError;
};

// A (kernel family, marginal distribution) combination without a closed form.
struct UnsupportedMarginalError : InputError {
  using InputError::InputError;
};

// Problems with CLI flags or config-file values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problems with the content of input data files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ustat
