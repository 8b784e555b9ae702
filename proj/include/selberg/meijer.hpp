#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selberg/mellin_kernel.hpp"

namespace selberg {

// G^{m,0}_{0,m}(z | b_1..b_m).
struct GSpec {
  int m = 1;
  std::vector<cplx> b;
  cplx z{1.0, 0.0};
  void validate() const;
};

enum class MeijerForm {
  Exponential,  // m=1:            e^{-z} z^b
  HalfStep,     // m=2, (b, b+1/2):  sqrt(pi) z^b e^{-2 sqrt z}
  BesselK,      // m=2, (b, c):      2 z^{(b+c)/2} K_{b-c}(2 sqrt z)
  ThirdStep,    // m=3, b + j/3:     (2 pi/sqrt 3) z^b e^{-3 z^{1/3}}
  QuarterStep,  // m=4, b + j/4:     sqrt 2 pi^{3/2} z^b e^{-4 z^{1/4}}
  FifthStep,    // m=5, b + j/5:     (4 pi^2/sqrt 5) z^b e^{-5 z^{1/5}}
  BesselPair,   // m=4, (b, b+1/2, 2b-c, c): 8 sqrt(pi) z^b K_{2c-2b}(2 sqrt2 (-z)^{1/4}) K_{2c-2b}(2 sqrt2 sqrt z/(-z)^{1/4})
};

std::string form_name(MeijerForm f);
bool matches_form(const GSpec& spec, MeijerForm f);
// First form whose pattern the parameters satisfy (BesselK accepts any m = 2 pair).
std::optional<MeijerForm> detect_form(const GSpec& spec);

// Throws std::invalid_argument on pattern mismatch.
cplx g_closed(const GSpec& spec, MeijerForm form);
// Line integral right of all poles (saddle abscissa). Accuracy as for kernels.
cplx g_quadrature(const GSpec& spec, const Accuracy& acc = {});
// Explicit contour; abscissa must lie right of every pole of prod Gamma(b_j + s).
cplx g_quadrature(const GSpec& spec, const ContourSpec& contour);

struct PrefactorMap {
  cplx prefactor;
  cplx w;
  GSpec spec;  // spec.z == w
};
// Z-tilde(x) = prefactor * G^{K,0}_{0,K}(w | b_ij), K = sum k_i.
PrefactorMap ztilde_prefactor_map(const SelbergData& data, double x);

// Closed-form Z-tilde when the parameter list matches a known form.
std::optional<cplx> z_tilde_closed(const SelbergData& data, double x);

}  // namespace selberg

namespace selberg {

struct IdentityCheckRow {
  std::string name;
  std::vector<MeijerForm> forms;
  std::vector<double> args;
  double max_rel_defect = 0.0;  // quadrature vs closed form
  double max_abs_imag = 0.0;    // imaginary part of the closed form
};

// Quadrature against closed form for the six identities (the first row
// covers both the m = 1 and the half-step m = 2 forms), three arguments each.
std::vector<IdentityCheckRow> cross_validate_identities(const Accuracy& acc = {});

}  // namespace selberg
