#include "selberg/complex_special.hpp"

#include <cmath>
#include <limits>

namespace selberg {
namespace {

// B_{2k}, k = 1..15.
constexpr double kBernoulli[] = {
    1.0 / 6.0,        -1.0 / 30.0,        1.0 / 42.0,         -1.0 / 30.0,       5.0 / 66.0,
    -691.0 / 2730.0,  7.0 / 6.0,          -3617.0 / 510.0,    43867.0 / 798.0,   -174611.0 / 330.0,
    854513.0 / 138.0, -236364091.0 / 2730.0, 8553103.0 / 6.0, -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

constexpr int kStirlingTerms = 12;
constexpr double kShiftTarget = 8.0;
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

void check_pole(cplx z) {
  if (std::fabs(z.imag()) < 1e-12 && z.real() < 0.5) {
    const double n = std::round(z.real());
    if (n <= 0.0 && std::abs(z - cplx(n, 0.0)) < 1e-12)
      throw std::domain_error("log_gamma: argument at a pole (nonpositive integer)");
  }
}

int shift_count(cplx z) {
  return z.real() < kShiftTarget ? static_cast<int>(std::ceil(kShiftTarget - z.real())) : 0;
}

cplx stirling_series(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  cplx acc = 0.0;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    acc += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + acc;
}

}  // namespace

cplx log_gamma(cplx z) {
  check_pole(z);
  const int n = shift_count(z);
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
  return stirling_series(z + static_cast<double>(n)) - shift;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx digamma(cplx z) {
  check_pole(z);
  const int n = shift_count(z);
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
  const cplx w = z + static_cast<double>(n);
  const cplx inv2 = 1.0 / (w * w);
  cplx pw = inv2;
  cplx acc = 0.0;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    acc += kBernoulli[k - 1] / (2.0 * k) * pw;
    pw *= inv2;
  }
  return std::log(w) - 0.5 / w - acc - shift;
}

cplx trigamma(cplx z) {
  check_pole(z);
  const int n = shift_count(z);
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx u = z + static_cast<double>(k);
    shift += 1.0 / (u * u);
  }
  const cplx w = z + static_cast<double>(n);
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx pw = inv2 * inv;
  cplx acc = 0.0;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    acc += kBernoulli[k - 1] * pw;
    pw *= inv2;
  }
  return inv + 0.5 * inv2 + acc + shift;
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(x, 2.0);  // exact
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(kPi * r);
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 0.0) return x < 170.0 ? 1.0 / std::tgamma(x) : std::exp(-std::lgamma(x));
  const double refl = 1.0 - x;
  const double g = refl < 170.0 ? std::tgamma(refl) : std::exp(std::lgamma(refl));
  return sin_pi(x) * g / kPi;
}

double log_stirling_magnitude(double sigma, double t, std::span<const double> alpha,
                              std::span<const cplx> beta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const cplx w = alpha[i] * cplx(sigma, t) + beta[i];
    const cplx lead = (w - 0.5) * std::log(w) - w;
    // Leading term plus a margin covering the first omitted correction.
    acc += lead.real() + kHalfLog2Pi + 1.0 / (6.0 * std::abs(w));
  }
  return acc;
}

double stirling_magnitude(double sigma, double t, std::span<const double> alpha,
                          std::span<const cplx> beta) {
  return std::exp(log_stirling_magnitude(sigma, t, alpha, beta));
}

}  // namespace selberg
