#include "selberg/mellin_kernel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "selberg/complex_special.hpp"
#include "selberg/summation.hpp"

namespace selberg {
namespace {

constexpr int kResidueNodes = 128;

LineOptions line_options(const ContourSpec& c, int derivative) {
  LineOptions o;
  o.step = c.step;
  o.height_min = c.height_T;
  o.accuracy = c.refinement;
  o.derivative = derivative;
  return o;
}

double z_tilde_lower_bound(const GammaProduct& g) { return std::max(g.rightmost_pole(), 0.0) + 0.5; }

}  // namespace

GammaProduct kernel_product(const SelbergData& data) {
  data.validate();
  std::vector<GammaFactor> f;
  for (std::size_t i = 0; i < data.alpha.size(); ++i) f.push_back({data.alpha[i].value(), std::conj(data.beta[i])});
  return GammaProduct(std::move(f));
}

DecayConstants decay_constants(const SelbergData& data) {
  const auto inv = derive_invariants(data);
  DecayConstants dc;
  dc.L = inv.L;
  dc.k = inv.k;
  double log_prod = 0.0;  // log prod k_i^{k_i}
  cplx sum_beta = 0.0;
  for (std::size_t i = 0; i < data.beta.size(); ++i) {
    const double ki = static_cast<double>(inv.k[i]);
    for (long j = 1; j <= inv.k[i]; ++j) dc.b_ij.push_back(std::conj(data.beta[i]) / ki + (j - 1.0) / ki);
    log_prod += ki * std::log(ki);
    sum_beta += std::conj(data.beta[i]);
  }
  const double Ld = static_cast<double>(inv.L) * inv.d_F;
  dc.C1 = Ld / (2.0 * std::exp(log_prod * 2.0 / Ld));
  dc.C2 = 2.0 / inv.d_F;
  dc.C3 = sum_beta + (1.0 - static_cast<double>(data.alpha.size())) / 2.0;
  dc.C4 = std::max(0.0, dc.C2 - 1.0);
  dc.C5 = 2.0 * dc.C3.real() + inv.d_F * dc.C4 + inv.d_F;
  return dc;
}

std::pair<ContourSpec, ContourSpec> default_contours(const SelbergData& data, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("default_contours: tol must be positive");
  const auto inv = derive_invariants(data);
  const double m = std::min(inv.c_F, 1.0);
  const auto alpha = data.alpha_values();
  std::vector<cplx> beta_bar;
  for (const auto& b : data.beta) beta_bar.push_back(std::conj(b));
  const GammaProduct g = kernel_product(data);

  auto height_for = [&](double sigma) {
    const double ref = g.log_value(cplx(sigma, 0.0)).real();
    const double target = ref + std::log(tol);
    double lo = 2.0, hi = 4.0;
    while (log_stirling_magnitude(sigma, hi, alpha, beta_bar) > target) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e9) throw ConvergenceError("default_contours: Stirling bound does not decay");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (log_stirling_magnitude(sigma, mid, alpha, beta_bar) > target ? lo : hi) = mid;
    }
    return hi;
  };
  ContourSpec z, zt;
  z.abscissa = -0.5 * m;
  zt.abscissa = 1.0 + 0.5 * m;
  if (m > 0.0) z.height_T = height_for(z.abscissa);
  zt.height_T = height_for(zt.abscissa);
  return {z, zt};
}

void check_z_contour(const SelbergData& data, const ContourSpec& c) {
  const auto inv = derive_invariants(data);
  if (!(c.abscissa > -inv.c_F && c.abscissa < 0.0))
    throw std::invalid_argument("kernel_Z: abscissa must lie in (-c_F, 0) = (" + std::to_string(-inv.c_F) + ", 0)");
  if (!(c.height_T > 0.0) || !(c.step > 0.0)) throw std::invalid_argument("ContourSpec: height_T and step must be > 0");
  c.refinement.validate();
}

void check_z_tilde_contour(const SelbergData& data, const ContourSpec& c) {
  const GammaProduct g = kernel_product(data);
  if (!(c.abscissa > std::max(0.0, g.rightmost_pole())))
    throw std::invalid_argument("kernel_Z_tilde: abscissa must lie right of s = 0 and of every Gamma pole");
  if (!(c.height_T > 0.0) || !(c.step > 0.0)) throw std::invalid_argument("ContourSpec: height_T and step must be > 0");
  c.refinement.validate();
}

cplx kernel_Z(const SelbergData& data, double x, const ContourSpec& contour) {
  if (!(x > 0.0)) throw std::invalid_argument("kernel_Z: x must be positive");
  check_z_contour(data, contour);
  return line_integral(kernel_product(data), std::log(x), contour.abscissa, line_options(contour, 0)).value.value();
}

cplx kernel_Z_prime(const SelbergData& data, double x, const ContourSpec& contour) {
  if (!(x > 0.0)) throw std::invalid_argument("kernel_Z_prime: x must be positive");
  check_z_contour(data, contour);
  return line_integral(kernel_product(data), std::log(x), contour.abscissa, line_options(contour, 1)).value.value();
}

cplx kernel_Z_tilde(const SelbergData& data, double x, const ContourSpec& contour) {
  if (!(x > 0.0)) throw std::invalid_argument("kernel_Z_tilde: x must be positive");
  check_z_tilde_contour(data, contour);
  return line_integral(kernel_product(data), std::log(x), contour.abscissa, line_options(contour, 0)).value.value();
}

cplx kernel_Z_tilde_prime(const SelbergData& data, double x, const ContourSpec& contour) {
  if (!(x > 0.0)) throw std::invalid_argument("kernel_Z_tilde_prime: x must be positive");
  check_z_tilde_contour(data, contour);
  return line_integral(kernel_product(data), std::log(x), contour.abscissa, line_options(contour, 1)).value.value();
}

Scaled inverse_mellin_right(const GammaProduct& g, cplx log_x, const Accuracy& acc, int derivative,
                            double min_abscissa) {
  const double lower = std::max(g.rightmost_pole() + 0.5, min_abscissa);
  const double sigma = saddle_abscissa(g, log_x.real(), lower);
  LineOptions o;
  o.accuracy = acc;
  o.derivative = derivative;
  return line_integral(g, log_x, sigma, o).value;
}

Scaled kernel_Z_tilde_scaled(const SelbergData& data, double x, const Accuracy& acc, int derivative) {
  if (!(x > 0.0)) throw std::invalid_argument("kernel_Z_tilde_scaled: x must be positive");
  const GammaProduct g = kernel_product(data);
  return inverse_mellin_right(g, std::log(x), acc, derivative, z_tilde_lower_bound(g));
}

double residue_radius(const GammaProduct& g) { return std::min(0.4, 0.5 * g.nearest_other_pole(0.0)); }

cplx residue_at_zero(const GammaProduct& g, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("residue_at_zero: x must be positive");
  if (g.pole_order(0.0) == 0) return 0.0;
  return circle_residue(g, 0.0, std::log(x), residue_radius(g), kResidueNodes);
}

cplx residue_at_zero(const SelbergData& data, double x) { return residue_at_zero(kernel_product(data), x); }

ResidueExpansion::ResidueExpansion(const GammaProduct& g) {
  const int m = g.pole_order(0.0);
  if (m == 0) return;
  const double r = residue_radius(g);
  c_.assign(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) {
    ComplexSum sum;
    for (int j = 0; j < kResidueNodes; ++j) {
      const double theta = 2.0 * kPi * (j + 0.5) / kResidueNodes;
      const cplx u = r * std::exp(cplx(0.0, theta));
      sum.add(g.value(u) * std::pow(u, k + 1));
    }
    c_[static_cast<std::size_t>(k)] = sum.value() / static_cast<double>(kResidueNodes);
  }
}

cplx ResidueExpansion::operator()(double x) const {
  if (c_.empty()) return 0.0;
  const double ml = -std::log(x);
  cplx acc = 0.0;
  double pw = 1.0, fact = 1.0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) {
      pw *= ml;
      fact *= static_cast<double>(k);
    }
    acc += c_[k] * (pw / fact);
  }
  return acc;
}

}  // namespace selberg
