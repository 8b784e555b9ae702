#include "selberg/meijer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "selberg/complex_special.hpp"

namespace selberg {
namespace {

constexpr double kPatternTol = 1e-12;

bool near(cplx a, cplx b) { return std::abs(a - b) < kPatternTol; }

// Base b for an arithmetic progression b, b+1/m, ..., b+(m-1)/m (any order).
std::optional<cplx> progression_base(const std::vector<cplx>& b, int m) {
  if (static_cast<int>(b.size()) != m) return std::nullopt;
  auto sorted = b;
  std::sort(sorted.begin(), sorted.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  for (int j = 0; j < m; ++j)
    if (!near(sorted[j], sorted[0] + static_cast<double>(j) / m)) return std::nullopt;
  return sorted[0];
}

struct PairParams {
  cplx b, c;
};

std::optional<PairParams> bessel_pair_params(const std::vector<cplx>& v) {
  if (v.size() != 4) return std::nullopt;
  std::array<int, 4> idx{0, 1, 2, 3};
  do {
    const cplx b = v[idx[0]], c = v[idx[3]];
    if (near(v[idx[1]], b + 0.5) && near(v[idx[2]], 2.0 * b - c)) return PairParams{b, c};
  } while (std::next_permutation(idx.begin(), idx.end()));
  return std::nullopt;
}

cplx zpow(cplx z, cplx p) { return std::exp(p * std::log(z)); }

}  // namespace

void GSpec::validate() const {
  if (m < 1) throw std::invalid_argument("GSpec: m must be positive");
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("GSpec: b must have length m");
  if (z == cplx(0.0)) throw std::invalid_argument("GSpec: z must be nonzero");
}

std::string form_name(MeijerForm f) {
  switch (f) {
    case MeijerForm::Exponential: return "G10_01_exp";
    case MeijerForm::HalfStep: return "G20_02_half_step";
    case MeijerForm::BesselK: return "G20_02_bessel_k";
    case MeijerForm::ThirdStep: return "G30_03_third_step";
    case MeijerForm::QuarterStep: return "G40_04_quarter_step";
    case MeijerForm::FifthStep: return "G50_05_fifth_step";
    case MeijerForm::BesselPair: return "G40_04_bessel_pair";
  }
  return "unknown";
}

bool matches_form(const GSpec& s, MeijerForm f) {
  switch (f) {
    case MeijerForm::Exponential: return s.m == 1 && s.b.size() == 1;
    case MeijerForm::HalfStep: return s.m == 2 && progression_base(s.b, 2).has_value();
    case MeijerForm::BesselK: return s.m == 2 && s.b.size() == 2;
    case MeijerForm::ThirdStep: return s.m == 3 && progression_base(s.b, 3).has_value();
    case MeijerForm::QuarterStep: return s.m == 4 && progression_base(s.b, 4).has_value();
    case MeijerForm::FifthStep: return s.m == 5 && progression_base(s.b, 5).has_value();
    case MeijerForm::BesselPair: return s.m == 4 && bessel_pair_params(s.b).has_value();
  }
  return false;
}

std::optional<MeijerForm> detect_form(const GSpec& spec) {
  for (MeijerForm f : {MeijerForm::Exponential, MeijerForm::HalfStep, MeijerForm::BesselK, MeijerForm::ThirdStep,
                       MeijerForm::QuarterStep, MeijerForm::BesselPair, MeijerForm::FifthStep})
    if (matches_form(spec, f)) return f;
  return std::nullopt;
}

cplx g_closed(const GSpec& spec, MeijerForm form) {
  spec.validate();
  if (!matches_form(spec, form))
    throw std::invalid_argument("g_closed: parameters do not match the pattern of " + form_name(form));
  const cplx z = spec.z;
  switch (form) {
    case MeijerForm::Exponential:
      return std::exp(-z) * zpow(z, spec.b[0]);
    case MeijerForm::HalfStep: {
      const cplx b = *progression_base(spec.b, 2);
      return std::sqrt(kPi) * zpow(z, b) * std::exp(-2.0 * std::sqrt(z));
    }
    case MeijerForm::BesselK: {
      const cplx b = spec.b[0], c = spec.b[1];
      if ((b - c).imag() != 0.0) throw std::invalid_argument("g_closed: Bessel order b - c must be real");
      return 2.0 * zpow(z, 0.5 * (b + c)) * bessel_k((b - c).real(), 2.0 * std::sqrt(z));
    }
    case MeijerForm::ThirdStep: {
      const cplx b = *progression_base(spec.b, 3);
      return 2.0 * kPi / std::sqrt(3.0) * zpow(z, b) * std::exp(-3.0 * zpow(z, 1.0 / 3.0));
    }
    case MeijerForm::QuarterStep: {
      const cplx b = *progression_base(spec.b, 4);
      return std::sqrt(2.0) * std::pow(kPi, 1.5) * zpow(z, b) * std::exp(-4.0 * zpow(z, 0.25));
    }
    case MeijerForm::FifthStep: {
      const cplx b = *progression_base(spec.b, 5);
      return 4.0 * kPi * kPi / std::sqrt(5.0) * zpow(z, b) * std::exp(-5.0 * zpow(z, 0.2));
    }
    case MeijerForm::BesselPair: {
      const auto p = *bessel_pair_params(spec.b);
      const cplx nu = 2.0 * p.c - 2.0 * p.b;
      if (nu.imag() != 0.0) throw std::invalid_argument("g_closed: Bessel order 2c - 2b must be real");
      const cplx q = zpow(-z, 0.25);
      const double r8 = 2.0 * std::sqrt(2.0);
      return 8.0 * std::sqrt(kPi) * zpow(z, p.b) * bessel_k(nu.real(), r8 * q) *
             bessel_k(nu.real(), r8 * std::sqrt(z) / q);
    }
  }
  throw std::invalid_argument("g_closed: unknown form");
}

namespace {
GammaProduct g_product(const GSpec& spec) {
  std::vector<GammaFactor> f;
  for (const auto& b : spec.b) f.push_back({1.0, b});
  return GammaProduct(std::move(f));
}
}  // namespace

cplx g_quadrature(const GSpec& spec, const Accuracy& acc) {
  spec.validate();
  return inverse_mellin_right(g_product(spec), std::log(spec.z), acc).value();
}

cplx g_quadrature(const GSpec& spec, const ContourSpec& contour) {
  spec.validate();
  const GammaProduct g = g_product(spec);
  if (!(contour.abscissa > g.rightmost_pole()))
    throw std::invalid_argument("g_quadrature: abscissa must lie right of every pole");
  LineOptions o;
  o.step = contour.step;
  o.height_min = contour.height_T;
  o.accuracy = contour.refinement;
  return line_integral(g, std::log(spec.z), contour.abscissa, o).value.value();
}

PrefactorMap ztilde_prefactor_map(const SelbergData& data, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("ztilde_prefactor_map: x must be positive");
  const auto dc = decay_constants(data);
  const double q = static_cast<double>(data.alpha.size());
  const double sum_k = std::accumulate(dc.k.begin(), dc.k.end(), 0.0);
  cplx log_pref = std::log(static_cast<double>(dc.L)) + (q / 2.0 - sum_k / 2.0) * std::log(2.0 * kPi);
  double log_kk = 0.0;
  for (std::size_t i = 0; i < dc.k.size(); ++i) {
    const double ki = static_cast<double>(dc.k[i]);
    log_pref += (std::conj(data.beta[i]) - 0.5) * std::log(ki);
    log_kk += ki * std::log(ki);
  }
  PrefactorMap out;
  out.prefactor = std::exp(log_pref);
  out.w = std::exp(static_cast<double>(dc.L) * std::log(x) - log_kk);
  out.spec.m = static_cast<int>(dc.b_ij.size());
  out.spec.b = dc.b_ij;
  out.spec.z = out.w;
  return out;
}

std::optional<cplx> z_tilde_closed(const SelbergData& data, double x) {
  const auto map = ztilde_prefactor_map(data, x);
  const auto form = detect_form(map.spec);
  if (!form) return std::nullopt;
  return map.prefactor * g_closed(map.spec, *form);
}

}  // namespace selberg

namespace selberg {

std::vector<IdentityCheckRow> cross_validate_identities(const Accuracy& acc) {
  struct Case {
    MeijerForm form;
    std::vector<cplx> b;
  };
  const std::vector<std::pair<std::string, std::vector<Case>>> table = {
      {"exp_and_half_step", {{MeijerForm::Exponential, {0.3}}, {MeijerForm::HalfStep, {0.3, 0.8}}}},
      {"third_step", {{MeijerForm::ThirdStep, {0.2, 0.2 + 1.0 / 3.0, 0.2 + 2.0 / 3.0}}}},
      {"quarter_step", {{MeijerForm::QuarterStep, {0.25, 0.5, 0.75, 1.0}}}},
      {"fifth_step", {{MeijerForm::FifthStep, {0.1, 0.3, 0.5, 0.7, 0.9}}}},
      {"bessel_k", {{MeijerForm::BesselK, {0.3, 0.1}}}},
      {"bessel_pair", {{MeijerForm::BesselPair, {0.0, 0.5, -0.3, 0.3}}}},
  };
  const std::vector<double> args = {0.3, 2.0, 15.0};
  std::vector<IdentityCheckRow> rows;
  for (const auto& [name, cases] : table) {
    IdentityCheckRow row;
    row.name = name;
    row.args = args;
    for (const auto& c : cases) {
      row.forms.push_back(c.form);
      for (double z : args) {
        const GSpec s{static_cast<int>(c.b.size()), c.b, z};
        const cplx closed = g_closed(s, c.form);
        const cplx quad = g_quadrature(s, acc);
        row.max_rel_defect = std::max(row.max_rel_defect, std::abs(quad - closed) / std::abs(closed));
        row.max_abs_imag = std::max(row.max_abs_imag, std::fabs(closed.imag()));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace selberg
