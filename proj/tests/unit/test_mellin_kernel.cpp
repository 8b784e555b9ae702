#include <doctest.h>

#include <cmath>

#include "selberg/complex_special.hpp"
#include "selberg/instances.hpp"
#include "selberg/meijer.hpp"
#include "selberg/mellin_kernel.hpp"

using namespace selberg;

namespace {

SelbergData make_data(std::vector<Rational> alpha, std::vector<cplx> beta) {
  SelbergData d;
  d.alpha = std::move(alpha);
  d.beta = std::move(beta);
  return d;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("zeta kernel closed form") {
  const auto z = make_zeta().data;
  const auto [c, d] = default_contours(z);
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 16.0})
    CHECK(std::abs(kernel_Z(z, x, c) - 2.0 * std::expm1(-x * x)) < 1e-13);
  CHECK(std::abs(kernel_Z(z, 1.0, c) - cplx(-1.2642411176571153)) < 1e-13);
  CHECK(std::abs(kernel_Z_tilde(z, 2.0, d) - 2.0 * std::exp(-4.0)) < 1e-14);
  CHECK(std::abs(kernel_Z_prime(z, 1.0, c) + 4.0 * std::exp(-1.0)) < 1e-13);
}

TEST_CASE("kernel with no pole at zero: alpha=(1), beta=(1/2)") {
  const auto d = make_data({{1, 1}}, {0.5});
  const auto [c, dt] = default_contours(d);
  CHECK(std::abs(kernel_Z(d, 1.0, c) - std::exp(-1.0)) < 1e-13);
  CHECK(residue_at_zero(d, 1.0) == cplx(0.0));
  for (double x : {0.3, 2.0, 7.0}) CHECK(std::abs(kernel_Z(d, x, c) - std::sqrt(x) * std::exp(-x)) < 1e-13);
}

TEST_CASE("real-quadratic kernel against the prefactored Bessel form") {
  const auto d = make_data({{1, 2}, {1, 2}}, {0.0, 0.0});
  const auto [c, dt] = default_contours(d);
  const cplx zt = kernel_Z_tilde(d, 4.0, dt);
  CHECK(rel(zt, 4.0 * bessel_k(0.0, 8.0)) < 1e-10);
  const auto map = ztilde_prefactor_map(d, 4.0);
  CHECK(rel(zt, map.prefactor * g_closed(map.spec, MeijerForm::BesselK)) < 1e-10);
}

TEST_CASE("Z = Z-tilde - residue on built-ins") {
  for (const char* name : {"zeta", "dirichlet:3:1", "dirichlet:5:2", "dedekind:5", "dedekind:-4"}) {
    const auto data = builtin(name).data;
    const auto [c, d] = default_contours(data);
    for (double x : {0.25, 1.0, 4.0, 16.0}) {
      const cplx lhs = kernel_Z(data, x, c);
      const cplx rhs = kernel_Z_tilde(data, x, d) - residue_at_zero(data, x);
      INFO(name << " x=" << x);
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }
  }
}

TEST_CASE("residue_at_zero") {
  const auto z = make_zeta().data;
  for (double x : {0.01, 0.5, 3.0, 100.0}) CHECK(std::abs(residue_at_zero(z, x) - 2.0) < 1e-13);
  const auto d = make_data({{1, 2}, {1, 2}}, {0.0, 0.0});
  for (double x : {0.01, 0.5, 3.0, 100.0})
    CHECK(std::abs(residue_at_zero(d, x) + 4.0 * (std::log(x) + kEulerGamma)) < 1e-12);

  // Expansion agrees with the direct circle, including a triple pole.
  const auto t = make_data({{1, 2}, {1, 1}, {1, 3}}, {0.0, 0.0, 0.0});
  const ResidueExpansion ex(kernel_product(t));
  CHECK(ex.order() == 3);
  for (double x : {0.1, 1.0, 9.0}) CHECK(std::abs(ex(x) - residue_at_zero(t, x)) < 1e-12);
  const ResidueExpansion none(kernel_product(make_data({{1, 1}}, {0.5})));
  CHECK(none(2.0) == cplx(0.0));
}

TEST_CASE("derivative against central differences") {
  for (const char* name : {"zeta", "dirichlet:3:1", "dedekind:5", "dedekind:-4"}) {
    const auto data = builtin(name).data;
    const auto [c, d] = default_contours(data);
    for (double x : {0.7, 1.3, 3.0}) {
      const double h = 1e-5;
      const cplx fd = (kernel_Z(data, x + h, c) - kernel_Z(data, x - h, c)) / (2 * h);
      const cplx an = kernel_Z_prime(data, x, c);
      INFO(name << " x=" << x);
      CHECK(std::abs(an - fd) <= 1e-6 * std::max(std::abs(an), 1e-3));
      const cplx fdt = (kernel_Z_tilde(data, x + h, d) - kernel_Z_tilde(data, x - h, d)) / (2 * h);
      CHECK(std::abs(kernel_Z_tilde_prime(data, x, d) - fdt) <= 1e-6 * std::max(std::abs(fdt), 1e-3));
    }
  }
}

TEST_CASE("small-x bounds with fitted constants") {
  const auto z = make_zeta().data;
  const auto [c, d] = default_contours(z);
  const double e = -c.abscissa;
  double K = 0.0, Kp = 0.0;
  for (double x = 1.0; x > 1e-6; x /= 3.0) {
    K = std::max(K, std::abs(kernel_Z(z, x, c)) / std::pow(x, e));
    Kp = std::max(Kp, std::abs(kernel_Z_prime(z, x, c)) / std::pow(x, e - 1.0));
  }
  CHECK(K < 3.0);
  CHECK(Kp < 5.0);
  CHECK(std::abs(kernel_Z(z, 1e-6, c)) < 1e-10);
}

TEST_CASE("decay_constants") {
  const auto z = decay_constants(make_zeta().data);
  CHECK(z.L == 2);
  CHECK(z.k == std::vector<long>{1});
  CHECK(z.C2 == 2.0);
  CHECK(std::abs(z.C1 - 1.0) < 1e-15);
  CHECK(z.C3 == cplx(0.0));
  CHECK(z.C4 == 1.0);
  CHECK(z.C5 == doctest::Approx(2.0));

  const auto a4 = decay_constants(make_data({{4, 1}}, {{0.5, 1.0}}));
  CHECK(a4.L == 1);
  CHECK(a4.k == std::vector<long>{4});
  CHECK(a4.C2 == 0.25);
  CHECK(std::abs(a4.C1 - 1.0) < 1e-14);
  CHECK(a4.b_ij.size() == 4);
  CHECK(std::abs(a4.b_ij[1] - cplx(0.125 + 0.25, -0.25)) < 1e-15);
  CHECK(a4.C4 == 0.0);

  const auto a1111 = decay_constants(make_data({{1, 1}, {1, 1}, {1, 1}, {1, 1}}, {0.0, 0.5, 0.5, 1.0}));
  CHECK(a1111.C2 == 0.25);
  CHECK(std::abs(a1111.C1 - 4.0) < 1e-14);
  CHECK(std::abs(a1111.C3 - cplx(2.0 - 1.5)) < 1e-15);
}

TEST_CASE("default_contours") {
  const auto [c, d] = default_contours(make_zeta().data, 1e-12);
  CHECK(c.abscissa == -0.5);
  CHECK(d.abscissa == 1.5);
  CHECK(c.height_T > 2.0);
  CHECK(default_contours(make_dirichlet(3, 1).data).first.abscissa == -0.5);
  const auto big = make_data({{1, 2}}, {5.0});
  CHECK(derive_invariants(big).c_F == 10.0);
  CHECK(default_contours(big).first.abscissa == -0.5);
}

TEST_CASE("abscissa independence and conjugation") {
  const auto data = make_data({{1, 2}, {1, 1}}, {{0.5, 1.0}, {0.75, -0.5}});
  const auto [c, d] = default_contours(data);
  ContourSpec c2 = c;
  c2.abscissa = -0.2;
  ContourSpec c3 = c;
  c3.abscissa = -0.7;
  for (double x : {0.3, 1.0, 5.0}) {
    const cplx a = kernel_Z(data, x, c2), b = kernel_Z(data, x, c3);
    CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)));
    CHECK(std::abs(kernel_Z(conjugate_data(data), x, c) - std::conj(kernel_Z(data, x, c))) < 1e-13);
  }
  ContourSpec dt = d;
  dt.abscissa = 0.1;
  CHECK(std::abs(kernel_Z_tilde(data, 2.0, dt) - kernel_Z_tilde(data, 2.0, d)) < 1e-12);
}

TEST_CASE("large-x scaled evaluation") {
  const auto z = make_zeta().data;
  for (double x : {10.0, 100.0, 1000.0}) {
    const auto s = kernel_Z_tilde_scaled(z, x);
    CHECK(std::abs(s.log_abs() - (std::log(2.0) - x * x)) < 1e-14 * x * x + 1e-12);
    const auto sp = kernel_Z_tilde_scaled(z, x, {}, 1);
    CHECK(std::abs(sp.log_abs() - (std::log(4.0 * x) - x * x)) < 1e-14 * x * x + 1e-12);
  }
  const auto k = make_dedekind_quadratic(5).data;
  const auto v = kernel_Z_tilde_scaled(k, 30.0);
  CHECK(rel(v.value(), 4.0 * bessel_k(0.0, 60.0)) < 1e-10);
}

TEST_CASE("contour errors") {
  const auto z = make_zeta().data;
  auto [c, d] = default_contours(z);
  ContourSpec bad = c;
  bad.abscissa = 0.2;
  CHECK_THROWS_AS(kernel_Z(z, 1.0, bad), std::invalid_argument);
  bad.abscissa = -1.5;
  CHECK_THROWS_AS(kernel_Z(z, 1.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(kernel_Z(z, -1.0, c), std::invalid_argument);
  ContourSpec bt = d;
  bt.abscissa = -0.1;
  CHECK_THROWS_AS(kernel_Z_tilde(z, 1.0, bt), std::invalid_argument);
  ContourSpec tight = c;
  tight.step = 8.0;
  tight.refinement.max_terms = 1;
  CHECK_THROWS_AS(kernel_Z(z, 1.0, tight), ConvergenceError);
  // Mixed zero/nonzero beta: c_F = 0 leaves no legal abscissa.
  const auto mixed = make_data({{1, 2}, {1, 2}}, {0.0, 0.5});
  CHECK(derive_invariants(mixed).c_F == 0.0);
  CHECK_THROWS_AS(kernel_Z(mixed, 1.0, c), std::invalid_argument);
}
