#include <doctest.h>

#include <cmath>
#include <string>

#include "selberg/complex_special.hpp"
#include "selberg/instances.hpp"
#include "selberg/meijer.hpp"

using namespace selberg;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

GSpec spec(std::vector<cplx> b, cplx z) { return GSpec{static_cast<int>(b.size()), std::move(b), z}; }

}  // namespace

TEST_CASE("closed forms against mpmath meijerg") {
  struct Case {
    MeijerForm f;
    std::vector<cplx> b;
    double z;
    double expect;
  };
  const std::vector<Case> cases = {
      {MeijerForm::Exponential, {0.3}, 1, 0.3678794411714423216},
      {MeijerForm::HalfStep, {0.3, 0.8}, 1, 0.23987554393612289474},
      {MeijerForm::BesselK, {0.3, 0.1}, 1, 0.22968375103647243333},
      {MeijerForm::ThirdStep, {0.2, 0.2 + 1.0 / 3, 0.2 + 2.0 / 3}, 2, 0.095125063857714300545},
      {MeijerForm::QuarterStep, {0.25, 0.5, 0.75, 1.0}, 5, 0.029736880741768079395},
      {MeijerForm::FifthStep, {0.1, 0.3, 0.5, 0.7, 0.9}, 1, 0.1189603751328477081},
      {MeijerForm::BesselPair, {0.0, 0.5, -0.3, 0.3}, 1, 0.14811894851126587837},
  };
  for (const auto& c : cases) {
    const auto s = spec(c.b, c.z);
    INFO(form_name(c.f));
    CHECK(rel(g_closed(s, c.f), c.expect) < 1e-13);
    CHECK(rel(g_quadrature(s), c.expect) < 1e-11);
  }
}

TEST_CASE("documented examples") {
  CHECK(rel(g_closed(spec({0.0}, 1.0), MeijerForm::Exponential), std::exp(-1.0)) < 1e-15);
  CHECK(rel(g_closed(spec({0.0, 0.0}, 1.0), MeijerForm::BesselK), 0.227787745499066871) < 1e-12);
  const cplx pair = g_closed(spec({0.0, 0.5, -0.3, 0.3}, 1.0), MeijerForm::BesselPair);
  CHECK(std::fabs(pair.imag()) < 1e-10 * std::abs(pair));
  // G^{3,0} at b=0, z=2 and the quarter-step form at b=1/4, z=5.
  const auto g3 = spec({0.0, 1.0 / 3, 2.0 / 3}, 2.0);
  CHECK(rel(g_quadrature(g3), g_closed(g3, MeijerForm::ThirdStep)) < 1e-9);
  const auto g4 = spec({0.25, 0.5, 0.75, 1.0}, 5.0);
  CHECK(rel(g_quadrature(g4), g_closed(g4, MeijerForm::QuarterStep)) < 1e-9);
  // m = 1 with an explicit line.
  ContourSpec line;
  line.abscissa = 0.5;
  const auto g1 = spec({0.7}, 3.0);
  CHECK(rel(g_quadrature(g1, line), std::exp(-3.0) * std::pow(3.0, 0.7)) < 1e-12);
}

TEST_CASE("bessel pair is real with complex-conjugate arguments") {
  for (double c : {0.1, 0.3, 0.45})
    for (double z : {0.01, 0.7, 9.0, 150.0}) {
      const cplx v = g_closed(spec({0.2, 0.7, 0.4 - c, c}, z), MeijerForm::BesselPair);
      CHECK(std::fabs(v.imag()) <= 1e-10 * std::abs(v));
    }
}

TEST_CASE("pattern detection and mismatch") {
  CHECK(detect_form(spec({0.1, 0.6}, 1.0)) == MeijerForm::HalfStep);
  CHECK(detect_form(spec({0.1, 0.2}, 1.0)) == MeijerForm::BesselK);
  CHECK(detect_form(spec({1.0, 0.75, 0.5, 0.25}, 1.0)) == MeijerForm::QuarterStep);
  CHECK(detect_form(spec({0.3, 0.0, 0.5, -0.3}, 1.0)) == MeijerForm::BesselPair);
  CHECK(!detect_form(spec({0.0, 0.1, 0.2, 0.3}, 1.0)).has_value());
  CHECK_THROWS_AS(g_closed(spec({0.0, 0.1, 0.2}, 1.0), MeijerForm::ThirdStep), std::invalid_argument);
  CHECK_THROWS_AS(g_closed(spec({0.0}, 0.0), MeijerForm::Exponential), std::invalid_argument);
  ContourSpec line;
  line.abscissa = -0.9;
  CHECK_THROWS_AS(g_quadrature(spec({0.7}, 3.0), line), std::invalid_argument);
}

TEST_CASE("prefactor map") {
  const auto z = make_zeta().data;
  const auto m = ztilde_prefactor_map(z, 1.7);
  CHECK(std::abs(m.prefactor - 2.0) < 1e-15);
  CHECK(std::abs(m.w - 1.7 * 1.7) < 1e-14);
  CHECK(std::abs(*z_tilde_closed(z, 1.7) - 2.0 * std::exp(-1.7 * 1.7)) < 1e-15);

  SelbergData a4;
  a4.alpha = {{4, 1}};
  a4.beta = {{0.5, 0.25}};
  for (double x : {0.5, 3.0, 40.0}) {
    const auto mp = ztilde_prefactor_map(a4, x);
    CHECK(mp.spec.m == 4);
    const cplx expect = 0.25 * std::exp(std::conj(a4.beta[0]) / 4.0 * std::log(x)) * std::exp(-std::pow(x, 0.25));
    CHECK(rel(*z_tilde_closed(a4, x), expect) < 1e-13);
    CHECK(rel(kernel_Z_tilde_scaled(a4, x).value(), expect) < 1e-9);
  }

  SelbergData raw;
  raw.alpha = {{1, 1}, {1, 1}, {1, 1}, {1, 1}};
  raw.beta = {0.0, 0.5, 0.3, 0.3};
  const auto mr = ztilde_prefactor_map(raw, 2.5);
  CHECK(std::abs(mr.prefactor - 1.0) < 1e-15);
  CHECK(std::abs(mr.w - 2.5) < 1e-15);
}

TEST_CASE("Z-tilde matches the closed form on built-ins") {
  for (const char* name : {"zeta", "dirichlet:3:1", "dirichlet:5:2", "dedekind:5", "dedekind:-4"}) {
    const auto data = builtin(name).data;
    for (double x : {0.5, 1.0, 2.0, 8.0}) {
      const cplx q = kernel_Z_tilde_scaled(data, x).value();
      INFO(std::string(name) << " x=" << x);
      CHECK(rel(q, *z_tilde_closed(data, x)) < 1e-8);
    }
  }
}

TEST_CASE("dual pair kernel: Z-tilde minus residue against the closed form") {
  // Gamma(s) Gamma(s+1/2) Gamma(s-C) Gamma(s+C): the data have Re beta < 0, so
  // this is checked on the bare Gamma product.
  for (double C : {0.2, 0.3, 0.4}) {
    const GammaProduct g({{1.0, 0.0}, {1.0, 0.5}, {1.0, -C}, {1.0, C}});
    const double res_closed = -kPi * std::sqrt(kPi) / (C * std::sin(kPi * C));
    CHECK(std::abs(residue_at_zero(g, 1.3) - res_closed) < 1e-10 * std::fabs(res_closed));
    for (double x : {0.5, 1.0, 4.0}) {
      const cplx zt = inverse_mellin_right(g, std::log(x)).value();
      const cplx closed =
          g_closed(spec({0.0, 0.5, -C, C}, x), MeijerForm::BesselPair) + kPi * std::sqrt(kPi) / (C * std::sin(kPi * C));
      CHECK(std::abs(zt - residue_at_zero(g, x) - closed) < 1e-7 * std::max(1.0, std::abs(closed)));
    }
  }
}
