#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selberg/instances.hpp"

namespace selberg {

struct ZeroRecord {
  cplx rho{0.5, 0.0};
  double gamma_ordinate = 0.0;
  cplx f_prime{0.0, 0.0};  // 0 until computed
  int bracket_id = -1;
};

// One ordinate per line, '#' starts a comment. Ordinates must be strictly
// ascending; errors name the offending line.
std::vector<ZeroRecord> parse_zeros(std::string_view text);
std::vector<ZeroRecord> load_zeros(const std::string& path);

inline constexpr double kDerivativeRadius = 0.01;

// F'(rho) by the Cauchy integral on |s - rho| = radius with 64 nodes.
// Throws std::domain_error if the circle does not enclose exactly one zero
// or if |F| on it dips close to zero.
cplx zeta_like_derivative(const Instance& inst, cplx rho, double radius = kDerivativeRadius);

// Rejects ordinates closer than 2 * radius, then fills f_prime (in parallel).
void compute_derivatives(const Instance& inst, std::vector<ZeroRecord>& records, double radius = kDerivativeRadius);

// Adjacent zeros share a bracket when their ordinates differ by less than
// exp(-c g/log g) + exp(-c g'/log g').
std::vector<ZeroRecord> bracket_zeros(std::vector<ZeroRecord> records, double c);
int bracket_count(const std::vector<ZeroRecord>& records);

struct ZeroSum {
  cplx value{0.0, 0.0};
  double last_bracket = 0.0;  // modulus of the final bracket's contribution
  int brackets = 0;
  std::size_t zeros = 0;
};

// sum_rho prod Gamma(alpha_i (1 - conj rho) + beta_i) / conj F'(rho) * nu^{conj rho},
// bracket by bracket. For real-coefficient instances each record also
// contributes its conjugate zero.
ZeroSum zero_sum(const Instance& inst, double nu, const std::vector<ZeroRecord>& records);

// Residues at s = 1 and s = 0 of prod Gamma(alpha_i(1-s)+beta_i) nu^s / conj F(conj s),
// divided by sqrt(nu); both zero when r <= 0.
std::pair<cplx, cplx> residue_terms(const Instance& inst, double nu, int r);

struct IdentityReport {
  double eta = 0.0;
  double nu = 0.0;
  cplx lhs_eta_term{0.0, 0.0};
  cplx lhs_nu_term{0.0, 0.0};
  cplx lhs{0.0, 0.0};
  cplx zero_sum{0.0, 0.0};
  cplx residue_s1{0.0, 0.0};
  cplx residue_s0{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  cplx defect{0.0, 0.0};
  double last_bracket = 0.0;
  int n_brackets = 0;
  std::size_t n_zeros_used = 0;
  std::size_t n_terms_used = 0;
  int r = 0;
  int r_statement = 0;
  double bracket_c = 0.01;
};

IdentityReport rhl_defect(const Instance& inst, double eta, std::vector<ZeroRecord> zeros, std::size_t term_cap,
                          double bracket_c = 0.01);

struct ZeroCountFit {
  std::size_t count = 0;  // records with ordinate <= T
  double fitted_C = 0.0;
};

// Fits N(t) - (d/pi) t log t = C t over t in [T/2, T]. With both_signs the
// counting function includes the conjugate zeros (2 x count).
ZeroCountFit zero_count_fit(const std::vector<ZeroRecord>& records, double T, double d_F, bool both_signs = true);

}  // namespace selberg
