#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace enantiosim {

using Complex = std::complex<double>;

// Hilbert spaces here never exceed four levels; the fixed upper bound keeps
// every operator on the stack.
inline constexpr int kMaxDim = 4;

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid user-facing input: bad parameters, inconsistent specs, unknown keys.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A simulation produced a state that violates a physical invariant
/// (norm, trace, positivity, finiteness).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace enantiosim
