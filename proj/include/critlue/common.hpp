#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace critlue {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Bad input: out of domain, wrong side flag, malformed config.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iteration / quadrature failed to settle.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result not representable in double.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Order or argument outside the envelope an evaluator is built for.
struct UnsupportedRange : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace critlue
