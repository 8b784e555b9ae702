#pragma once

#include <utility>
#include <vector>

#include "selberg/lfunction.hpp"
#include "selberg/line_integral.hpp"

namespace selberg {

struct ContourSpec {
  double abscissa = -0.5;
  double height_T = 50.0;
  double step = 0.05;
  Accuracy refinement{};
};

struct DecayConstants {
  long L = 1;
  std::vector<long> k;
  std::vector<cplx> b_ij;  // i-major, j = 1..k_i
  double C1 = 0.0;
  double C2 = 0.0;
  cplx C3{0.0, 0.0};
  double C4 = 0.0;
  double C5 = 0.0;
};

// prod Gamma(alpha_i s + conj(beta_i)).
GammaProduct kernel_product(const SelbergData& data);

DecayConstants decay_constants(const SelbergData& data);

// (Z contour, Z-tilde contour). height_T solves stirling_magnitude < tol
// relative to the integrand at t = 0 (x = 1).
std::pair<ContourSpec, ContourSpec> default_contours(const SelbergData& data, double tol = 1e-12);

// Contour legality: Z needs -c_F < c < 0; Z-tilde any line right of every pole
// (which for valid data means d > 0). Throws std::invalid_argument.
void check_z_contour(const SelbergData& data, const ContourSpec& c);
void check_z_tilde_contour(const SelbergData& data, const ContourSpec& c);

cplx kernel_Z(const SelbergData& data, double x, const ContourSpec& contour);
cplx kernel_Z_tilde(const SelbergData& data, double x, const ContourSpec& contour);
cplx kernel_Z_prime(const SelbergData& data, double x, const ContourSpec& contour);
cplx kernel_Z_tilde_prime(const SelbergData& data, double x, const ContourSpec& contour);

// Z-tilde (or its derivative) on the saddle line, scaled so that values far
// below the double range keep their relative accuracy.
Scaled kernel_Z_tilde_scaled(const SelbergData& data, double x, const Accuracy& acc = {}, int derivative = 0);
// Same for a bare Gamma product, on a line right of all its poles.
Scaled inverse_mellin_right(const GammaProduct& g, cplx log_x, const Accuracy& acc = {}, int derivative = 0,
                            double min_abscissa = -std::numeric_limits<double>::infinity());

// Residue at s = 0 of the kernel integrand (0 when there is no pole there),
// by 128-node circle quadrature.
cplx residue_at_zero(const SelbergData& data, double x);
cplx residue_at_zero(const GammaProduct& g, double x);
double residue_radius(const GammaProduct& g);

// Res_{s=0} G(s) x^{-s} = sum_k c_k (-log x)^k / k!, with the c_k obtained
// once by circle quadrature. Cheap to evaluate for many x.
class ResidueExpansion {
 public:
  explicit ResidueExpansion(const GammaProduct& g);
  cplx operator()(double x) const;
  int order() const { return static_cast<int>(c_.size()); }
  const std::vector<cplx>& moments() const { return c_; }

 private:
  std::vector<cplx> c_;
};

}  // namespace selberg
