#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace selberg {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// Precondition violations throw std::invalid_argument, mathematical domain
// problems std::domain_error, and numeric procedures that fail to reach the
// requested accuracy throw ConvergenceError.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Accuracy {
  double rel_tol = 1e-12;
  // Interpreted relative to the peak magnitude of the quantity being summed
  // or integrated (see line_integral.hpp).
  double abs_floor = 1e-16;
  int max_terms = 12;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("Accuracy: rel_tol must be > 0");
    if (!(abs_floor >= 0.0)) throw std::invalid_argument("Accuracy: abs_floor must be >= 0");
    if (max_terms < 1) throw std::invalid_argument("Accuracy: max_terms must be >= 1");
  }
};

// Value represented as mantissa * exp(log_scale), for kernels far below the
// double range.
struct Scaled {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  cplx value() const { return mantissa == cplx(0.0) ? cplx(0.0) : mantissa * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

}  // namespace selberg
