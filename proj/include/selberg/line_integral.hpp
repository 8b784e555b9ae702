#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "selberg/common.hpp"

namespace selberg {

// Gamma(a s + b), a > 0.
struct GammaFactor {
  double a = 1.0;
  cplx b{0.0, 0.0};
};

class GammaProduct {
 public:
  GammaProduct() = default;
  explicit GammaProduct(std::vector<GammaFactor> factors);

  const std::vector<GammaFactor>& factors() const { return f_; }
  cplx log_value(cplx s) const;
  cplx value(cplx s) const { return std::exp(log_value(s)); }
  // sum a_i psi(a_i s + b_i) and sum a_i^2 psi'(a_i s + b_i).
  cplx log_derivative(cplx s) const;
  cplx log_second_derivative(cplx s) const;

  // Largest real part of any pole.
  double rightmost_pole() const;
  // Number of factors with a pole at s0.
  int pole_order(cplx s0) const;
  // Distance from s0 to the nearest pole that is not at s0.
  double nearest_other_pole(cplx s0) const;
  bool real_coefficients() const;
  double sum_a() const;

 private:
  std::vector<GammaFactor> f_;
};

struct LineOptions {
  // Initial trapezoid step as a fraction of the integrand's natural width.
  double step = 0.05;
  // Lower bound on the truncation height in each direction.
  double height_min = 0.0;
  Accuracy accuracy{};
  // 1: integrate G(s) (-s) x^{-s-1} instead of G(s) x^{-s}.
  int derivative = 0;
};

struct LineResult {
  Scaled value;
  double abscissa = 0.0;
  double height_lo = 0.0;  // truncation below the real axis (positive number)
  double height_hi = 0.0;
  double step = 0.0;       // final step
  int refinements = 0;
  std::size_t nodes = 0;
};

// (1/2 pi i) int_{sigma - i inf}^{sigma + i inf} G(s) x^{-s} ds, with log_x = log x
// (complex allowed). Trapezoid on a truncated line, step halving until two
// successive estimates agree to rel_tol * |I| + abs_floor * (peak * width).
// Throws ConvergenceError after accuracy.max_terms halvings.
LineResult line_integral(const GammaProduct& g, cplx log_x, double sigma, const LineOptions& opt);

// Abscissa minimising |G(sigma) x^{-sigma}| over sigma > rightmost pole,
// clipped below at lower_bound.
double saddle_abscissa(const GammaProduct& g, double log_x, double lower_bound);

// Residue of G(s) x^{-s} at s0 by the trapezoid rule on |s - s0| = radius.
cplx circle_residue(const GammaProduct& g, cplx s0, double log_x, double radius, int nodes);

}  // namespace selberg
