#include "selberg/zeros.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "selberg/complex_special.hpp"
#include "selberg/parallel.hpp"
#include "selberg/riesz.hpp"
#include "selberg/summation.hpp"

namespace selberg {

std::vector<ZeroRecord> parse_zeros(std::string_view text) {
  std::vector<ZeroRecord> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    char* tail = nullptr;
    errno = 0;
    const double g = std::strtod(line.c_str(), &tail);
    if (tail == line.c_str() || *tail != '\0' || errno == ERANGE || !std::isfinite(g))
      throw std::invalid_argument("zero list line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
    if (!out.empty() && !(g > out.back().gamma_ordinate))
      throw std::invalid_argument("zero list line " + std::to_string(line_no) + ": ordinates must be strictly ascending");
    ZeroRecord r;
    r.gamma_ordinate = g;
    r.rho = cplx(0.5, g);
    out.push_back(r);
    if (end == text.size()) break;
  }
  return out;
}

std::vector<ZeroRecord> load_zeros(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open zero list: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_zeros(ss.str());
}

namespace {
constexpr int kDerivativeNodes = 64;
constexpr double kMinModulusRatio = 0.2;
}  // namespace

cplx zeta_like_derivative(const Instance& inst, cplx rho, double radius) {
  if (!inst.has_evaluator()) throw std::invalid_argument("zeta_like_derivative: instance has no F evaluator");
  if (!(radius > 0.0)) throw std::invalid_argument("zeta_like_derivative: radius must be positive");
  ComplexSum sum;
  double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
  double winding = 0.0, prev_arg = 0.0, first_arg = 0.0;
  for (int j = 0; j < kDerivativeNodes; ++j) {
    const cplx u = std::polar(radius, 2.0 * kPi * j / kDerivativeNodes);
    const cplx f = inst.evaluate(rho + u);
    sum.add(f / u);
    const double m = std::abs(f);
    fmin = std::min(fmin, m);
    fmax = std::max(fmax, m);
    const double a = std::arg(f);
    if (j == 0) {
      first_arg = a;
    } else {
      winding += std::remainder(a - prev_arg, 2.0 * kPi);
    }
    prev_arg = a;
  }
  winding += std::remainder(first_arg - prev_arg, 2.0 * kPi);
  if (!(fmin >= kMinModulusRatio * fmax))
    throw std::domain_error("zeta_like_derivative: |F| nearly vanishes on the circle (another zero nearby?)");
  const long count = std::lround(winding / (2.0 * kPi));
  if (count != 1)
    throw std::domain_error("zeta_like_derivative: circle encloses " + std::to_string(count) + " zeros, expected 1");
  return sum.value() / static_cast<double>(kDerivativeNodes);
}

void compute_derivatives(const Instance& inst, std::vector<ZeroRecord>& records, double radius) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].gamma_ordinate - records[i - 1].gamma_ordinate < 2.0 * radius)
      throw std::invalid_argument("zero list: ordinates " + std::to_string(records[i - 1].gamma_ordinate) + " and " +
                                  std::to_string(records[i].gamma_ordinate) +
                                  " are closer than the differentiation circle allows");
  parallel_for(records.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) records[i].f_prime = zeta_like_derivative(inst, records[i].rho, radius);
  });
}

namespace {
// exp(-c g/log g); log g <= 0 is treated as a threshold of 1.
double bracket_radius(double g, double c) {
  const double ag = std::fabs(g);
  if (ag <= 1.0) return 1.0;
  return std::exp(-c * ag / std::log(ag));
}
}  // namespace

std::vector<ZeroRecord> bracket_zeros(std::vector<ZeroRecord> records, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("bracket_zeros: c must be positive");
  int id = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) {
      if (!(records[i].gamma_ordinate > records[i - 1].gamma_ordinate))
        throw std::invalid_argument("bracket_zeros: ordinates must be ascending");
      const double gap = records[i].gamma_ordinate - records[i - 1].gamma_ordinate;
      if (!(gap < bracket_radius(records[i].gamma_ordinate, c) + bracket_radius(records[i - 1].gamma_ordinate, c)))
        ++id;
    }
    records[i].bracket_id = id;
  }
  return records;
}

int bracket_count(const std::vector<ZeroRecord>& records) {
  return records.empty() ? 0 : records.back().bracket_id + 1;
}

namespace {

cplx zero_term(const SelbergData& data, const std::vector<double>& alpha, cplx rho, cplx fprime, double log_nu) {
  const cplx rb = std::conj(rho);
  cplx lg = rb * log_nu;
  for (std::size_t i = 0; i < alpha.size(); ++i) lg += log_gamma(alpha[i] * (1.0 - rb) + data.beta[i]);
  return std::exp(lg) / std::conj(fprime);
}

}  // namespace

ZeroSum zero_sum(const Instance& inst, double nu, const std::vector<ZeroRecord>& records) {
  if (!(nu > 0.0)) throw std::invalid_argument("zero_sum: nu must be positive");
  ZeroSum out;
  if (records.empty()) return out;
  const auto alpha = inst.data.alpha_values();
  const double log_nu = std::log(nu);
  ComplexSum total;
  ComplexSum bracket;
  int current = records.front().bracket_id;
  for (const auto& r : records) {
    if (!(std::abs(r.f_prime) >= 1e-12))
      throw std::domain_error("zero_sum: |F'(rho)| < 1e-12 at ordinate " + std::to_string(r.gamma_ordinate));
    if (inst.real_coefficients && !(r.gamma_ordinate > 0.0))
      throw std::invalid_argument("zero_sum: real-coefficient instances take positive ordinates only");
    if (r.bracket_id != current) {
      total.add(bracket.value());
      out.last_bracket = std::abs(bracket.value());
      bracket = ComplexSum{};
      current = r.bracket_id;
      ++out.brackets;
    }
    bracket.add(zero_term(inst.data, alpha, r.rho, r.f_prime, log_nu));
    ++out.zeros;
    if (inst.real_coefficients) {
      // F'(conj rho) = conj F'(rho) when the coefficients are real.
      bracket.add(zero_term(inst.data, alpha, std::conj(r.rho), std::conj(r.f_prime), log_nu));
      ++out.zeros;
    }
  }
  total.add(bracket.value());
  out.last_bracket = std::abs(bracket.value());
  ++out.brackets;
  out.value = total.value();
  return out;
}

namespace {
constexpr int kResidueNodes = 128;
constexpr double kResidueRadius = 0.1;
}  // namespace

std::pair<cplx, cplx> residue_terms(const Instance& inst, double nu, int r) {
  if (r <= 0) return {0.0, 0.0};
  if (!inst.has_evaluator()) throw std::invalid_argument("residue_terms: r > 0 needs an F evaluator");
  const auto alpha = inst.data.alpha_values();
  const double log_nu = std::log(nu);
  auto H = [&](cplx s) {
    cplx lg = s * log_nu;
    for (std::size_t i = 0; i < alpha.size(); ++i) lg += log_gamma(alpha[i] * (1.0 - s) + inst.data.beta[i]);
    return std::exp(lg) / std::conj(inst.evaluate(std::conj(s)));
  };
  auto residue = [&](cplx s0) {
    ComplexSum sum;
    for (int j = 0; j < kResidueNodes; ++j) {
      const cplx u = std::polar(kResidueRadius, 2.0 * kPi * (j + 0.5) / kResidueNodes);
      sum.add(H(s0 + u) * u);
    }
    return sum.value() / static_cast<double>(kResidueNodes);
  };
  const double sn = std::sqrt(nu);
  return {residue(1.0) / sn, residue(0.0) / sn};
}

IdentityReport rhl_defect(const Instance& inst, double eta, std::vector<ZeroRecord> zeros, std::size_t term_cap,
                          double bracket_c) {
  if (!(eta > 0.0)) throw std::invalid_argument("rhl_defect: eta must be positive");
  if (term_cap < 1) throw std::invalid_argument("rhl_defect: term cap must be >= 1");
  const auto& data = inst.data;
  data.validate();
  const auto inv = derive_invariants(data);
  IdentityReport rep;
  rep.eta = eta;
  rep.nu = 1.0 / (data.Q * data.Q * eta);
  rep.r = inv.r;
  rep.r_statement = inv.r_statement;
  rep.bracket_c = bracket_c;
  rep.n_terms_used = term_cap;

  const auto table = inst.table(term_cap);
  const KernelEvaluator k_beta(data);
  const KernelEvaluator k_conj(conjugate_data(data));
  std::vector<cplx> t_eta(term_cap + 1, 0.0), t_nu(term_cap + 1, 0.0);
  parallel_for(term_cap, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t n = i + 1;
      const cplx b = table.b[n];
      if (b == cplx(0.0)) continue;
      const double dn = static_cast<double>(n);
      t_eta[n] = b / dn * k_beta.Z(eta / dn);
      t_nu[n] = std::conj(b) / dn * k_conj.Z(rep.nu / dn);
    }
  });
  ComplexSum se, sn;
  for (std::size_t n = 1; n <= term_cap; ++n) {
    se.add(t_eta[n]);
    sn.add(t_nu[n]);
  }
  rep.lhs_eta_term = data.omega * std::sqrt(eta) * se.value();
  rep.lhs_nu_term = std::sqrt(rep.nu) * sn.value();
  rep.lhs = rep.lhs_eta_term - rep.lhs_nu_term;

  compute_derivatives(inst, zeros);
  zeros = bracket_zeros(std::move(zeros), bracket_c);
  const auto zs = zero_sum(inst, rep.nu, zeros);
  rep.zero_sum = zs.value;
  rep.last_bracket = zs.last_bracket;
  rep.n_brackets = zs.brackets;
  rep.n_zeros_used = zs.zeros;
  std::tie(rep.residue_s1, rep.residue_s0) = residue_terms(inst, rep.nu, inv.r);
  rep.rhs = -rep.zero_sum / std::sqrt(rep.nu) - rep.residue_s1 - rep.residue_s0;
  rep.defect = rep.lhs - rep.rhs;
  return rep;
}

ZeroCountFit zero_count_fit(const std::vector<ZeroRecord>& records, double T, double d_F, bool both_signs) {
  if (records.empty()) throw std::invalid_argument("zero_count_fit: empty zero list");
  if (!(T > 1.0)) throw std::invalid_argument("zero_count_fit: T must exceed 1");
  if (records.back().gamma_ordinate < T) throw std::invalid_argument("zero_count_fit: zero list does not reach T");
  auto count_upto = [&](double t) {
    return static_cast<std::size_t>(std::upper_bound(records.begin(), records.end(), t,
                                                     [](double v, const ZeroRecord& r) { return v < r.gamma_ordinate; }) -
                                    records.begin());
  };
  ZeroCountFit out;
  out.count = count_upto(T);
  const double mult = both_signs ? 2.0 : 1.0;
  double num = 0.0, den = 0.0;
  constexpr int kGrid = 50;
  for (int j = 0; j <= kGrid; ++j) {
    const double t = T * (0.5 + 0.5 * j / kGrid);
    const double resid = mult * static_cast<double>(count_upto(t)) - d_F / kPi * t * std::log(t);
    num += t * resid;
    den += t * t;
  }
  out.fitted_C = num / den;
  return out;
}

}  // namespace selberg
