#include <cmath>

#include "selberg/complex_special.hpp"

namespace selberg {
namespace {

constexpr double kSeriesRadius = 0.5;
constexpr double kIntegerGap = 5e-4;  // node spacing for integer orders
constexpr double kCutAngle = 0.9 * kPi;

cplx i_series(double nu, cplx z) {
  const cplx q = 0.25 * z * z;
  cplx term = std::pow(0.5 * z, nu) * rgamma(nu + 1.0);
  cplx sum = term;
  const int kmin = static_cast<int>(std::fabs(nu)) + 2;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (k > kmin && std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw ConvergenceError("bessel_i: series did not converge");
}

cplx k_series_direct(double nu, cplx z) {
  return 0.5 * kPi * (i_series(-nu, z) - i_series(nu, z)) / sin_pi(nu);
}

// nu >= 0 here; K is even in the order.
cplx k_series(double nu, cplx z) {
  const double n = std::round(nu);
  const double delta = nu - n;
  if (std::fabs(delta) >= kIntegerGap) return k_series_direct(nu, z);
  // Quintic Lagrange interpolation through n +- h, n +- 2h, n +- 3h.
  const double h = kIntegerGap;
  const double nodes[6] = {-3 * h, -2 * h, -h, h, 2 * h, 3 * h};
  cplx acc = 0.0;
  for (int i = 0; i < 6; ++i) {
    double w = 1.0;
    for (int j = 0; j < 6; ++j)
      if (j != i) w *= (delta - nodes[j]) / (nodes[i] - nodes[j]);
    acc += w * k_series_direct(n + nodes[i], z);
  }
  return acc;
}

// K_nu(z) = sqrt(pi/(2z)) e^{-z}/Gamma(nu+1/2) int_0^inf e^{-v} v^{nu-1/2} (1+v/(2z))^{nu-1/2} dv,
// integrated after v = exp(tau - exp(-tau)).
cplx k_integral(double nu, cplx z) {
  const double p = nu - 0.5;
  const cplx inv2z = 0.5 / z;
  auto f = [&](double tau) -> cplx {
    const double em = std::exp(-tau);
    const double logv = tau - em;
    const double v = std::exp(logv);
    const double mag = std::exp(-v + (nu + 0.5) * logv) * (1.0 + em);
    if (mag == 0.0) return 0.0;
    return mag * std::pow(1.0 + v * inv2z, p);
  };
  const double lo = -6.5, hi = 6.5;
  double h = 0.25;
  cplx s = 0.0;
  const int n0 = static_cast<int>(std::llround((hi - lo) / h));
  for (int k = 0; k <= n0; ++k) s += f(lo + k * h);
  cplx prev = s * h;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    cplx add = 0.0;
    const int count = static_cast<int>(std::llround((hi - lo) / (2 * h)));
    for (int k = 0; k < count; ++k) add += f(lo + (2 * k + 1) * h);
    s += add;
    const cplx cur = s * h;
    if (std::abs(cur - prev) <= 1e-15 * std::abs(cur)) {
      return std::sqrt(kPi * inv2z) * std::exp(-z) * rgamma(nu + 0.5) * cur;
    }
    prev = cur;
  }
  throw ConvergenceError("bessel_k: integral representation did not converge");
}

}  // namespace

cplx bessel_i(double nu, cplx z) {
  if (nu < 0.0 && nu == std::floor(nu)) nu = -nu;
  return i_series(nu, z);
}

cplx bessel_k(double nu, cplx z) {
  if (z == cplx(0.0)) throw std::domain_error("bessel_k: z = 0");
  if (z.imag() == 0.0 && z.real() < 0.0) throw std::domain_error("bessel_k: z on the branch cut");
  nu = std::fabs(nu);
  const double r = std::abs(z);
  if (r <= kSeriesRadius) return k_series(nu, z);
  const double theta = std::arg(z);
  if (std::fabs(theta) <= kCutAngle) return k_integral(nu, z);
  // Half-turn continuation from w = -z, where |arg w| < 0.1 pi.
  const cplx w = -z;
  const double sgn = theta > 0 ? 1.0 : -1.0;
  const cplx rot = std::exp(cplx(0.0, -sgn * kPi * nu));
  return rot * k_integral(nu, w) - sgn * cplx(0.0, kPi) * i_series(nu, w);
}

}  // namespace selberg
