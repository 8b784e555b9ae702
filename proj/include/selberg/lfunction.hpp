#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "selberg/common.hpp"

namespace selberg {

struct Rational {
  long num = 1;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct SelbergData {
  double Q = 1.0;
  std::vector<Rational> alpha;
  std::vector<cplx> beta;
  cplx omega{1.0, 0.0};
  int k_F = 0;

  // Throws std::invalid_argument when an invariant fails.
  void validate() const;
  std::vector<double> alpha_values() const;
};

struct DerivedInvariants {
  double d_F = 0.0;
  int j_F = 0;
  double c_F = 0.0;
  int r = 0;            // j_F - k_F
  int r_statement = 0;  // k_F - j_F, as written in the theorem statement
  long L = 1;
  std::vector<long> k;
};

inline constexpr double kZeroBetaThreshold = 1e-12;

DerivedInvariants derive_invariants(const SelbergData& data);
SelbergData conjugate_data(const SelbergData& data);

struct EulerFactor {
  long p = 2;
  std::vector<cplx> roots;
};
using EulerFactors = std::map<long, EulerFactor>;

std::vector<long> primes_up_to(long n);

// Vectors below are indexed by n directly: element 0 is unused (zero).
std::vector<cplx> coefficients_from_euler(const EulerFactors& factors, std::size_t N);
std::vector<cplx> dirichlet_inverse(std::span<const cplx> a);
std::vector<cplx> dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b);

struct CoefficientTable {
  std::size_t N = 0;
  std::vector<cplx> a;
  std::vector<cplx> b;

  static CoefficientTable from_a(std::vector<cplx> a);
};

}  // namespace selberg
