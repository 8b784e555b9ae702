#include "selberg/lfunction.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace selberg {

void SelbergData::validate() const {
  if (!(Q > 0.0) || !std::isfinite(Q)) throw std::invalid_argument("SelbergData: Q must be positive");
  if (alpha.empty()) throw std::invalid_argument("SelbergData: alpha must be non-empty");
  if (alpha.size() != beta.size())
    throw std::invalid_argument("SelbergData: alpha and beta lengths differ");
  for (const auto& a : alpha) {
    if (a.den <= 0 || a.num <= 0) throw std::invalid_argument("SelbergData: alpha must be a positive rational");
  }
  for (const auto& b : beta) {
    if (!(b.real() >= 0.0)) throw std::invalid_argument("SelbergData: Re beta must be >= 0");
  }
  if (std::fabs(std::abs(omega) - 1.0) > 1e-12) throw std::invalid_argument("SelbergData: |omega| must be 1");
  if (k_F < 0) throw std::invalid_argument("SelbergData: k_F must be >= 0");
}

std::vector<double> SelbergData::alpha_values() const {
  std::vector<double> out;
  out.reserve(alpha.size());
  for (const auto& a : alpha) out.push_back(a.value());
  return out;
}

DerivedInvariants derive_invariants(const SelbergData& data) {
  data.validate();
  DerivedInvariants inv;
  double sum_alpha = 0.0;
  bool all_imaginary = true;
  for (std::size_t i = 0; i < data.alpha.size(); ++i) {
    sum_alpha += data.alpha[i].value();
    if (std::abs(data.beta[i]) < kZeroBetaThreshold) ++inv.j_F;
    if (data.beta[i].real() != 0.0) all_imaginary = false;
  }
  inv.d_F = 2.0 * sum_alpha;
  double cmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.alpha.size(); ++i) {
    const double a = data.alpha[i].value();
    cmin = std::min(cmin, all_imaginary ? 1.0 / (2.0 * a) : data.beta[i].real() / a);
  }
  inv.c_F = cmin;
  inv.r = inv.j_F - data.k_F;
  inv.r_statement = data.k_F - inv.j_F;

  long L = 1;
  for (const auto& a : data.alpha) {
    const long g = std::gcd(a.num, a.den);
    L = std::lcm(L, a.den / g);
  }
  inv.L = L;
  for (const auto& a : data.alpha) {
    const long g = std::gcd(a.num, a.den);
    inv.k.push_back((a.num / g) * (L / (a.den / g)));
  }
  return inv;
}

SelbergData conjugate_data(const SelbergData& data) {
  SelbergData out = data;
  for (auto& b : out.beta) b = std::conj(b);
  out.omega = std::conj(out.omega);
  return out;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (long m = p * p; m <= n; m += p) composite[m] = true;
  }
  return primes;
}

std::vector<cplx> coefficients_from_euler(const EulerFactors& factors, std::size_t N) {
  std::vector<cplx> a(N + 1, cplx(0.0));
  if (N == 0) return a;
  a[1] = 1.0;
  std::vector<long> spf(N + 1, 0);
  for (std::size_t i = 2; i <= N; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t m = i; m <= N; m += i)
      if (spf[m] == 0) spf[m] = static_cast<long>(i);
  }
  // Prime powers: a(p^m) = h_m(roots), via m h_m = sum_k P_k h_{m-k}.
  for (std::size_t p = 2; p <= N; ++p) {
    if (spf[p] != static_cast<long>(p)) continue;
    const auto it = factors.find(static_cast<long>(p));
    if (it == factors.end())
      throw std::invalid_argument("coefficients_from_euler: missing Euler factor for p = " + std::to_string(p));
    const auto& roots = it->second.roots;
    std::vector<cplx> h{1.0};
    std::vector<cplx> power_sums{0.0};
    std::vector<cplx> pw(roots.begin(), roots.end());
    for (std::size_t q = p, m = 1; q <= N; q *= p, ++m) {
      cplx pk = 0.0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        pk += pw[i];
        pw[i] *= roots[i];
      }
      power_sums.push_back(pk);
      cplx hm = 0.0;
      for (std::size_t k = 1; k <= m; ++k) hm += power_sums[k] * h[m - k];
      hm /= static_cast<double>(m);
      h.push_back(hm);
      a[q] = hm;
      if (q > N / p) break;
    }
  }
  for (std::size_t n = 2; n <= N; ++n) {
    const std::size_t p = static_cast<std::size_t>(spf[n]);
    std::size_t m = n, pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    if (m != 1) a[n] = a[pe] * a[m];
  }
  return a;
}

std::vector<cplx> dirichlet_inverse(std::span<const cplx> a) {
  if (a.size() < 2) throw std::invalid_argument("dirichlet_inverse: need a(1)");
  if (std::abs(a[1] - cplx(1.0)) > 1e-12) throw std::invalid_argument("dirichlet_inverse: a(1) must be 1");
  const std::size_t N = a.size() - 1;
  std::vector<cplx> acc(N + 1, cplx(0.0));
  std::vector<cplx> b(N + 1, cplx(0.0));
  for (std::size_t n = 1; n <= N; ++n) {
    b[n] = (n == 1 ? cplx(1.0) : cplx(0.0)) - acc[n];
    if (b[n] == cplx(0.0)) continue;
    for (std::size_t m = 2 * n, q = 2; m <= N; m += n, ++q) {
      if (a[q] != cplx(0.0)) acc[m] += b[n] * a[q];
    }
  }
  return b;
}

std::vector<cplx> dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t N = std::min(a.size(), b.size()) - 1;
  std::vector<cplx> c(N + 1, cplx(0.0));
  for (std::size_t d = 1; d <= N; ++d)
    for (std::size_t m = d, q = 1; m <= N; m += d, ++q) c[m] += a[d] * b[q];
  return c;
}

CoefficientTable CoefficientTable::from_a(std::vector<cplx> a) {
  CoefficientTable t;
  t.N = a.empty() ? 0 : a.size() - 1;
  t.b = dirichlet_inverse(a);
  t.a = std::move(a);
  return t;
}

}  // namespace selberg
