#include "selberg/characters.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace selberg {
namespace {

struct Generator {
  long g;      // residue mod q
  long order;  // order of g in (Z/qZ)^*
};

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

long mult_order(long g, long m) {
  long x = g % m, k = 1;
  while (x != 1 % m) {
    x = x * g % m;
    ++k;
  }
  return k;
}

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

// CRT lift: x = v mod pe, x = 1 mod q/pe.
long crt_lift(long v, long pe, long q) {
  const long rest = q / pe;
  for (long x = v; x < q; x += pe)
    if (x % rest == 1 % rest) return x;
  throw std::logic_error("crt_lift failed");
}

std::vector<Generator> generators(long q) {
  std::vector<Generator> gens;
  long n = q;
  for (long p = 2; p <= n; ++p) {
    if (n % p) continue;
    long pe = 1;
    while (n % p == 0) {
      n /= p;
      pe *= p;
    }
    if (p == 2) {
      if (pe == 2) continue;
      gens.push_back({crt_lift(pe - 1, pe, q), 2});
      if (pe >= 8) gens.push_back({crt_lift(5, pe, q), pe / 4});
      continue;
    }
    long g = 2;
    const long phi = pe / p * (p - 1);
    while (std::gcd(g, pe) != 1 || mult_order(g, pe) != phi) ++g;
    gens.push_back({crt_lift(g, pe, q), phi});
  }
  return gens;
}

// exp(2 pi i num/den) with exact values at quarter turns.
cplx root_of_unity(long num, long den) {
  num %= den;
  if (num < 0) num += den;
  const long g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return 1.0;
  if (den == 2) return -1.0;
  if (den == 4) return num == 1 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
  const double a = 2.0 * kPi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

long DirichletCharacter::group_order(long q) { return euler_phi(q); }

DirichletCharacter::DirichletCharacter(long q, long index) : q_(q), index_(index) {
  if (q < 1 || q > kMaxCharacterModulus)
    throw std::invalid_argument("DirichletCharacter: modulus must be in [1, " +
                                std::to_string(kMaxCharacterModulus) + "]");
  if (index < 0 || index >= euler_phi(q))
    throw std::invalid_argument("DirichletCharacter: index out of range for modulus " + std::to_string(q));
  const auto gens = generators(q);
  std::vector<long> exps;
  long rest = index;
  for (const auto& g : gens) {
    exps.push_back(rest % g.order);
    rest /= g.order;
  }
  // Enumerate the group as products of generator powers; record discrete logs.
  values_.assign(static_cast<std::size_t>(q), cplx(0.0));
  std::vector<long> digits(gens.size(), 0);
  const long total = euler_phi(q);
  for (long count = 0; count < total; ++count) {
    long x = 1 % q;
    long num = 0, den = 1;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      x = x * powmod(gens[j].g, digits[j], q) % q;
      // accumulate exps[j]*digits[j]/order_j as a fraction over the lcm
      const long o = gens[j].order;
      const long l = std::lcm(den, o);
      num = num * (l / den) + exps[j] * digits[j] * (l / o);
      den = l;
      num %= den;
    }
    values_[static_cast<std::size_t>(x)] = root_of_unity(num, den);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (++digits[j] < gens[j].order) break;
      digits[j] = 0;
    }
  }
  if (q == 1) values_[0] = 1.0;
}

cplx DirichletCharacter::operator()(long n) const {
  long r = n % q_;
  if (r < 0) r += q_;
  return values_[static_cast<std::size_t>(r)];
}

long DirichletCharacter::conductor() const {
  for (long d = 1; d <= q_; ++d) {
    if (q_ % d) continue;
    bool induced = true;
    for (long n = 1; n < q_ && induced; ++n) {
      if (std::gcd(n, q_) != 1 || (n - 1) % d != 0) continue;
      if (std::abs((*this)(n) - cplx(1.0)) > 1e-9) induced = false;
    }
    if (induced) return d;
  }
  return q_;
}

bool DirichletCharacter::is_real() const {
  for (const auto& v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

int DirichletCharacter::parity() const { return std::abs((*this)(-1) - cplx(1.0)) < 1e-9 ? 0 : 1; }

cplx DirichletCharacter::gauss_sum() const {
  cplx s = 0.0;
  for (long a = 1; a <= q_; ++a) s += (*this)(a) * root_of_unity(a, q_);
  return s;
}

int kronecker(long D, long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const long r = ((D % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (D/n) for odd n > 0.
  long a = D % n;
  if (a < 0) a += n;
  long m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

bool is_fundamental_discriminant(long D) {
  auto squarefree = [](long m) {
    m = std::labs(m);
    for (long p = 2; p * p <= m; ++p)
      if (m % (p * p) == 0) return false;
    return true;
  };
  if (D == 0 || D == 1) return false;
  const long r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  if (r == 0) {
    const long m = D / 4;
    const long rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

}  // namespace selberg
