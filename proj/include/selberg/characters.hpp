#pragma once

#include <vector>

#include "selberg/common.hpp"

namespace selberg {

inline constexpr long kMaxCharacterModulus = 100;

// Dirichlet character mod q. Characters are indexed by their exponent vector
// over the CRT generators of (Z/qZ)^*, read as a mixed-radix number with the
// smallest prime power first; index 0 is the principal character. For 2^e with
// e >= 3 the generators are -1 (order 2) then 5 (order 2^{e-2}).
class DirichletCharacter {
 public:
  DirichletCharacter(long q, long index);

  long modulus() const { return q_; }
  long index() const { return index_; }
  cplx operator()(long n) const;
  const std::vector<cplx>& values() const { return values_; }

  long conductor() const;
  bool is_primitive() const { return conductor() == q_; }
  bool is_real() const;
  int parity() const;  // 0 even, 1 odd
  cplx gauss_sum() const;

  static long group_order(long q);

 private:
  long q_;
  long index_;
  std::vector<cplx> values_;
};

// Kronecker symbol (D/n).
int kronecker(long D, long n);
bool is_fundamental_discriminant(long D);

}  // namespace selberg
