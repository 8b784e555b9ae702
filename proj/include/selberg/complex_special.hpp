#pragma once

#include <span>

#include "selberg/common.hpp"

namespace selberg {

// Principal branch of log Gamma (imaginary part is the continuous argument
// along the ray from +infinity, i.e. arg Gamma without taking any modulus).
// Throws std::domain_error within 1e-12 of a nonpositive integer.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
cplx digamma(cplx z);
cplx trigamma(cplx z);

// 1/Gamma(x) for real x; exactly 0 at nonpositive integers.
double rgamma(double x);
// sin(pi x) with exact zeros at integers.
double sin_pi(double x);

// Upper estimate of |prod Gamma(alpha_i (sigma+it) + beta_i)| from the
// leading Stirling magnitude of each factor.
double stirling_magnitude(double sigma, double t, std::span<const double> alpha,
                          std::span<const cplx> beta);
double log_stirling_magnitude(double sigma, double t, std::span<const double> alpha,
                              std::span<const cplx> beta);

// Modified Bessel functions, real order, principal branch.
cplx bessel_i(double nu, cplx z);
cplx bessel_k(double nu, cplx z);

}  // namespace selberg
