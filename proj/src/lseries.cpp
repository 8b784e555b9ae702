#include "selberg/lseries.hpp"

#include <cmath>
#include <vector>

#include "selberg/summation.hpp"

namespace selberg {
namespace {

// B_{2j}/(2j)!, j = 1..15.
constexpr double kBernoulliOverFactorial[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,  -8.2671957671957672e-07,
    2.0876756987868099e-08,  -5.2841901386874932e-10, 1.3382536530684679e-11,  -3.3896802963225829e-13,
    8.5860620562778446e-15,  -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24};

constexpr double kAlternatingMaxT = 350.0;

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: a must be positive");
  if (s == cplx(1.0)) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  const int M = 30 + static_cast<int>(std::ceil(std::abs(s)));
  ComplexSum sum;
  for (int k = 0; k < M; ++k) sum.add(std::exp(-s * std::log(k + a)));
  const double Na = M + a;
  const double logNa = std::log(Na);
  const cplx NaPow = std::exp(-s * logNa);  // (M+a)^{-s}
  sum.add(NaPow * Na / (s - 1.0));
  sum.add(0.5 * NaPow);
  // sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) (M+a)^{-s-2j+1}
  cplx rising = s;
  cplx pw = NaPow / Na;
  const double inv2 = 1.0 / (Na * Na);
  for (int j = 1; j <= 15; ++j) {
    const cplx term = kBernoulliOverFactorial[j - 1] * rising * pw;
    sum.add(term);
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
    rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    pw *= inv2;
  }
  return sum.value();
}

cplx zeta_alternating(cplx s) {
  if (s == cplx(1.0)) throw std::domain_error("zeta: pole at s = 1");
  const double t = std::fabs(s.imag());
  const int n = static_cast<int>((0.5 * kPi * t + 40.0) / 1.76) + 10;
  // d_k = n sum_{i=0}^k (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0 / n;  // i = 0 term of the sum, scaled by 1/n
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= static_cast<double>(n + i - 1) * static_cast<double>(n - i + 1) * 4.0 /
            (static_cast<double>(2 * i) * static_cast<double>(2 * i - 1));
    acc += term;
    d[i] = n * acc;
  }
  const double dn = d[n];
  ComplexSum sum;
  for (int k = 0; k < n; ++k) {
    const double w = (k % 2 == 0 ? 1.0 : -1.0) * (d[k] - dn) / dn;
    sum.add(w * std::exp(-s * std::log(static_cast<double>(k + 1))));
  }
  const cplx eta = -sum.value();
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

cplx riemann_zeta(cplx s) {
  if (s.real() >= 0.0 && std::fabs(s.imag()) <= kAlternatingMaxT && std::abs(s - 1.0) > 1e-3)
    return zeta_alternating(s);
  return hurwitz_zeta(s, 1.0);
}

cplx dirichlet_l(cplx s, std::span<const cplx> values) {
  const std::size_t q = values.size();
  if (q == 0) throw std::invalid_argument("dirichlet_l: empty character table");
  ComplexSum sum;
  const double qd = static_cast<double>(q);
  for (std::size_t a = 1; a <= q; ++a) {
    const cplx chi = values[a % q];
    if (chi == cplx(0.0)) continue;
    sum.add(chi * hurwitz_zeta(s, static_cast<double>(a) / qd));
  }
  return std::exp(-s * std::log(qd)) * sum.value();
}

}  // namespace selberg
