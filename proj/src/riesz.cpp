#include "selberg/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "selberg/complex_special.hpp"
#include "selberg/parallel.hpp"
#include "selberg/summation.hpp"

namespace selberg {

struct KernelEvaluator::Cache {
  std::mutex mu;
  std::unordered_map<double, cplx> values;
};

std::string path_name(KernelPath p) {
  switch (p) {
    case KernelPath::Auto: return "auto";
    case KernelPath::Quadrature: return "quadrature";
    case KernelPath::ClosedForm: return "closed";
    case KernelPath::Custom: return "custom";
  }
  return "unknown";
}

KernelEvaluator::KernelEvaluator(const SelbergData& data, KernelPath path) : data_(data) {
  data.validate();
  if (path == KernelPath::Custom) throw std::invalid_argument("KernelEvaluator: use custom() for a custom kernel");
  map_ = ztilde_prefactor_map(data, 1.0);
  log_kk_ = -std::log(map_.w.real());
  L_ = decay_constants(data).L;
  form_ = detect_form(map_.spec);
  residue_ = std::make_shared<ResidueExpansion>(kernel_product(data));
  cache_ = std::make_shared<Cache>();
  if (path == KernelPath::Auto) path = form_ ? KernelPath::ClosedForm : KernelPath::Quadrature;
  if (path == KernelPath::ClosedForm && !form_)
    throw std::invalid_argument("KernelEvaluator: no closed form matches these Gamma parameters");
  path_ = path;
  z_contour_ = default_contours(data).first;

  // prefactor * (e^{-w} - 1): avoid the cancellation for small w.
  if (form_ == MeijerForm::Exponential && std::abs(map_.spec.b[0]) == 0.0 && residue_->order() == 1)
    expm1_case_ = std::abs(residue_->moments()[0] - map_.prefactor) < 1e-13 * std::abs(map_.prefactor);
}

KernelEvaluator KernelEvaluator::custom(std::function<cplx(double)> z, std::function<cplx(double)> residue) {
  KernelEvaluator k;
  k.path_ = KernelPath::Custom;
  k.custom_z_ = std::move(z);
  k.custom_res_ = std::move(residue);
  return k;
}

cplx KernelEvaluator::residue(double x) const {
  if (path_ == KernelPath::Custom) return custom_res_ ? custom_res_(x) : cplx(0.0);
  return (*residue_)(x);
}

cplx KernelEvaluator::Z(double x) const {
  if (!(x > 0.0)) throw std::invalid_argument("KernelEvaluator: x must be positive");
  switch (path_) {
    case KernelPath::Custom: return custom_z_(x);
    case KernelPath::ClosedForm: return closed_Z(x);
    default: return quadrature_Z(x);
  }
}

cplx KernelEvaluator::closed_Z(double x) const {
  const double w = std::pow(x, static_cast<double>(L_)) * std::exp(-log_kk_);
  if (expm1_case_) return map_.prefactor * std::expm1(-w);
  cplx zt;
  const cplx b0 = map_.spec.b[0];
  if (*form_ == MeijerForm::Exponential && b0.imag() == 0.0) {
    zt = map_.prefactor * (std::pow(w, b0.real()) * std::exp(-w));
  } else {
    GSpec s = map_.spec;
    s.z = w;
    zt = map_.prefactor * g_closed(s, *form_);
  }
  return zt - residue(x);
}

cplx KernelEvaluator::quadrature_Z(double x) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    const auto it = cache_->values.find(x);
    if (it != cache_->values.end()) return it->second;
  }
  const cplx v = x <= 1.0 ? kernel_Z(data_, x, z_contour_) : kernel_Z_tilde_scaled(data_, x).value() - residue(x);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->values.emplace(x, v);
  return v;
}

double KernelEvaluator::fitted_small_x_constant(double e) const {
  double K = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double x = std::ldexp(1.0, -k);
    K = std::max(K, std::abs(Z(x)) / std::pow(x, e));
  }
  return K;
}

void RieszConfig::validate() const {
  if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("riesz: y must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("riesz: epsilon must lie in (0, 1/2)");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("riesz: tail_tol must be positive");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::invalid_argument("riesz: z must be finite");
}

std::size_t auto_terms(double y) {
  return static_cast<std::size_t>(std::max(1e4, std::ceil(400.0 * std::sqrt(y))));
}

namespace {

constexpr double kCoefficientDelta = 0.01;
constexpr double kTailSafety = 10.0;

double kernel_argument(double sqrt_y, std::size_t n, double d) {
  const double r = sqrt_y / static_cast<double>(n);
  return d == 1.0 ? r : std::pow(r, d);
}

// sum_{n<=N} b(n)/n Z((sqrt y/n)^d) cosh(sqrt y z/n), terms evaluated in
// parallel and added in ascending n.
cplx plain_sum(double d, std::span<const cplx> b, const KernelEvaluator& k, double y, cplx z, std::size_t N) {
  const double sy = std::sqrt(y);
  std::vector<cplx> terms(N + 1, 0.0);
  parallel_for(N, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t n = i + 1;
      if (b[n] == cplx(0.0)) continue;
      const cplx kz = k.Z(kernel_argument(sy, n, d));
      if (kz == cplx(0.0)) continue;
      const cplx ch = z == cplx(0.0) ? cplx(1.0) : std::cosh(sy * z / static_cast<double>(n));
      const cplx t = b[n] / static_cast<double>(n) * kz * ch;
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
        throw std::domain_error("riesz_P: term overflow at n = " + std::to_string(n));
      terms[n] = t;
    }
  });
  ComplexSum sum;
  for (std::size_t n = 1; n <= N; ++n) sum.add(terms[n]);
  return sum.value();
}

double tail_estimate(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k, const RieszConfig& cfg,
                     std::size_t N, double* K_out, double* e_out) {
  const auto inv = derive_invariants(data);
  const double e = 0.99 * inv.c_F;
  *e_out = e;
  const double de = inv.d_F * e;
  const double sy = std::sqrt(cfg.y);
  if (!(de > kCoefficientDelta) || kernel_argument(sy, N, inv.d_F) > 1.0) {
    *K_out = 0.0;
    return std::numeric_limits<double>::infinity();
  }
  const double K = k.fitted_small_x_constant(e);
  *K_out = K;
  double Cb = 0.0;
  for (std::size_t n = 1; n <= N; ++n)
    Cb = std::max(Cb, std::abs(b[n]) / std::pow(static_cast<double>(n), kCoefficientDelta));
  const double ch = std::cosh(sy * std::fabs(cfg.z.real()) / static_cast<double>(N));
  return kTailSafety * K * Cb * ch * std::pow(cfg.y, de / 2.0) *
         std::pow(static_cast<double>(N), kCoefficientDelta - de) / (de - kCoefficientDelta);
}

std::size_t resolve_terms(const RieszConfig& cfg, std::span<const cplx> b) {
  if (b.size() < 2) throw std::invalid_argument("riesz: empty coefficient table");
  const std::size_t avail = b.size() - 1;
  if (cfg.N == 0) return std::min(avail, auto_terms(cfg.y));
  if (cfg.N > avail) throw std::invalid_argument("riesz: coefficient table shorter than N");
  return cfg.N;
}

}  // namespace

RieszResult riesz_P(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k, const RieszConfig& cfg) {
  cfg.validate();
  RieszResult r;
  r.N = resolve_terms(cfg, b);
  r.h = static_cast<std::size_t>(std::floor(std::pow(cfg.y, 0.5 - cfg.epsilon)));
  r.tail_bound = tail_estimate(data, b, k, cfg, r.N, &r.K_small, &r.exponent);
  if (r.tail_bound > cfg.tail_tol)
    throw ConvergenceError("riesz_P: tail bound " + std::to_string(r.tail_bound) + " exceeds tail_tol at N = " +
                           std::to_string(r.N));
  r.value = plain_sum(derive_invariants(data).d_F, b, k, cfg.y, cfg.z, r.N);
  return r;
}

RieszResult riesz_P_corrected(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k,
                              const RieszConfig& cfg) {
  RieszResult r = riesz_P(data, b, k, cfg);
  const double d = derive_invariants(data).d_F;
  const double sy = std::sqrt(cfg.y);
  ComplexSum corr;
  for (std::size_t n = 1; n + 1 <= r.h && n < b.size(); ++n) {
    if (b[n] == cplx(0.0)) continue;
    corr.add(b[n] / static_cast<double>(n) * k.residue(kernel_argument(sy, n, d)));
  }
  r.correction = corr.value();
  r.value += r.correction;
  return r;
}

namespace {

RieszResult riesz_instance(const Instance& inst, const RieszConfig& cfg, KernelPath path, bool corrected) {
  cfg.validate();
  const KernelEvaluator k(inst.data, path);
  std::size_t N = cfg.N == 0 ? auto_terms(cfg.y) : cfg.N;
  for (;;) {
    const auto table = inst.table(N);
    RieszConfig c = cfg;
    c.N = N;
    try {
      return corrected ? riesz_P_corrected(inst.data, table.b, k, c) : riesz_P(inst.data, table.b, k, c);
    } catch (const ConvergenceError&) {
      if (cfg.N != 0 || N >= 100000000) throw;
      N *= 4;
    }
  }
}

}  // namespace

RieszResult riesz_P(const Instance& inst, const RieszConfig& cfg, KernelPath path) {
  return riesz_instance(inst, cfg, path, false);
}

RieszResult riesz_P_corrected(const Instance& inst, const RieszConfig& cfg, KernelPath path) {
  return riesz_instance(inst, cfg, path, true);
}

cplx summatory_M(std::span<const cplx> b, double x) {
  if (!(x >= 0.0)) return 0.0;
  const std::size_t top = static_cast<std::size_t>(std::floor(x));
  if (top >= b.size()) throw std::invalid_argument("summatory_M: coefficient table too short");
  ComplexSum s;
  for (std::size_t n = 1; n <= top; ++n) s.add(b[n]);
  return s.value();
}

cplx partial_M(std::span<const cplx> b, std::size_t h, std::size_t N) {
  if (N < h) return 0.0;
  if (N >= b.size()) throw std::invalid_argument("partial_M: coefficient table too short");
  ComplexSum s;
  for (std::size_t n = std::max<std::size_t>(h, 1); n <= N; ++n) s.add(b[n] / static_cast<double>(n));
  return s.value();
}

cplx summatory_M(const Instance& inst, double x) {
  const auto t = inst.table(static_cast<std::size_t>(std::max(1.0, std::floor(x))));
  return summatory_M(t.b, x);
}

cplx partial_M(const Instance& inst, std::size_t h, std::size_t N) {
  if (N < h) return 0.0;
  const auto t = inst.table(std::max<std::size_t>(N, 1));
  return partial_M(t.b, h, N);
}

std::vector<double> log_grid(double ymin, double ymax, int points) {
  if (!(ymin > 0.0) || !(ymax > ymin) || points < 2) throw std::invalid_argument("log_grid: need 0 < ymin < ymax, points >= 2");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log(ymin), b = std::log(ymax);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  g.front() = ymin;
  g.back() = ymax;
  return g;
}

namespace {

// Least squares of log|v| on log y over the used points.
void fit_slope(DecayScanResult& r) {
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < r.values.size(); ++i)
    if (r.used[i]) {
      X.push_back(std::log(r.y_grid[i]));
      Y.push_back(std::log(std::abs(r.values[i])));
    }
  const std::size_t n = X.size();
  if (n < 4) throw std::domain_error("decay_scan: fewer than 4 usable grid points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += X[i], my += Y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) sxx += (X[i] - mx) * (X[i] - mx), sxy += (X[i] - mx) * (Y[i] - my);
  r.fitted_slope = sxy / sxx;
  r.intercept = my - r.fitted_slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = Y[i] - r.intercept - r.fitted_slope * X[i];
    ss += e * e;
  }
  r.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
}

}  // namespace

DecayScanResult decay_scan(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k, cplx z,
                           const std::vector<double>& y_grid, const ScanOptions& opt) {
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    if (!(y_grid[i] > 0.0)) throw std::invalid_argument("decay_scan: grid values must be positive");
    if (i > 0 && !(y_grid[i] > y_grid[i - 1])) throw std::invalid_argument("decay_scan: grid must be strictly increasing");
  }
  DecayScanResult r;
  r.y_grid = y_grid;
  r.corrected = opt.corrected.value_or(derive_invariants(data).j_F != 0);
  for (double y : y_grid) {
    RieszConfig cfg;
    cfg.y = y;
    cfg.z = z;
    cfg.epsilon = opt.epsilon;
    cfg.tail_tol = opt.tail_tol;
    cfg.N = opt.N != 0 ? opt.N : std::min(opt.N_cap, auto_terms(y));
    const auto res = r.corrected ? riesz_P_corrected(data, b, k, cfg) : riesz_P(data, b, k, cfg);
    r.values.push_back(res.value);
    r.N.push_back(res.N);
    r.h.push_back(res.h);
    r.tail_bounds.push_back(res.tail_bound);
  }

  // Sign changes only make sense for a real-valued series; at each one the
  // point closer to the crossing (smaller modulus) is dropped.
  const std::size_t m = r.values.size();
  r.used.assign(m, true);
  bool real = true;
  for (const auto& v : r.values) real = real && std::fabs(v.imag()) <= 1e-10 * std::abs(v);
  for (std::size_t i = 0; i < m; ++i)
    if (r.values[i] == cplx(0.0)) r.used[i] = false;
  if (real)
    for (std::size_t i = 0; i + 1 < m; ++i)
      if ((r.values[i].real() < 0) != (r.values[i + 1].real() < 0)) {
        const std::size_t drop = std::abs(r.values[i]) < std::abs(r.values[i + 1]) ? i : i + 1;
        r.used[drop] = false;
      }
  fit_slope(r);
  return r;
}

DecayScanResult decay_scan(const Instance& inst, cplx z, const std::vector<double>& y_grid, const ScanOptions& opt) {
  std::size_t Nmax = 1;
  for (double y : y_grid) Nmax = std::max(Nmax, opt.N != 0 ? opt.N : std::min(opt.N_cap, auto_terms(y)));
  const auto table = inst.table(Nmax);
  const KernelEvaluator k(inst.data, opt.path);
  return decay_scan(inst.data, table.b, k, z, y_grid, opt);
}

namespace {

struct GaussLegendre {
  std::vector<double> x, w;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-16) break;
    }
    g.x[i] = t;
    g.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return g;
}

constexpr double kPanelWidth = 0.5;
constexpr double kUpperU = 16.0;

std::size_t mellin_terms(double y) {
  return static_cast<std::size_t>(std::max(2000.0, std::ceil(400.0 * std::sqrt(y))));
}

}  // namespace

MellinCheck mellin_transform_check(const Instance& inst, cplx s, cplx z, const Accuracy& quad) {
  quad.validate();
  const auto& data = inst.data;
  data.validate();
  if (!(s.real() > 0.0 && s.real() < 0.5)) throw std::invalid_argument("mellin_transform_check: need 0 < Re s < 1/2");
  for (const auto& b : data.beta)
    if (!(b.real() > 0.0)) throw std::invalid_argument("mellin_transform_check: requires Re beta_i > 0 for every i");
  if (!inst.has_evaluator()) throw std::invalid_argument("mellin_transform_check: instance has no F evaluator");

  const auto inv = derive_invariants(data);
  const double d = inv.d_F;
  MellinCheck out;

  // Right side: even power series in z.
  {
    ComplexSum sum;
    const auto alpha = data.alpha_values();
    // Only z^2 enters, so z and -z give bitwise equal sums.
    const cplx logz2 = z == cplx(0.0) ? cplx(0.0) : std::log(z * z);
    for (int t = 0;; ++t) {
      if (t > 0 && z == cplx(0.0)) break;
      if (t > 2000) throw ConvergenceError("mellin_transform_check: z-series did not converge");
      cplx lt = (t > 0 ? static_cast<double>(t) * logz2 : cplx(0.0)) - std::lgamma(2.0 * t + 1.0);
      for (std::size_t i = 0; i < alpha.size(); ++i)
        lt += log_gamma(2.0 * alpha[i] / d * (static_cast<double>(t) - s) + std::conj(data.beta[i]));
      const cplx term = std::exp(lt);
      sum.add(term);
      ++out.rhs_terms;
      if (t > 0 && std::abs(term) <= quad.abs_floor * std::abs(sum.value())) break;
    }
    out.rhs = 2.0 / d * sum.value();
  }

  // Left side: u = log y, Gauss-Legendre panels. Near y = 0 the integrand is
  // bounded by y^{kappa - 1} with kappa = d e/2 - Re s, e the small-x exponent.
  const double e = 0.99 * inv.c_F;
  const double kappa = d * e / 2.0 - s.real();
  if (!(kappa > 0.0)) throw ConvergenceError("mellin_transform_check: integrand bound not integrable at y = 0");
  const double floor_tol = std::max(quad.abs_floor, 1e-300);
  double u_lo = std::max(-700.0, std::log(floor_tol * kappa) / kappa);
  u_lo = kPanelWidth * std::floor(u_lo / kPanelWidth);
  out.u_lo = u_lo;
  out.Y_star = std::exp(kUpperU);

  const std::size_t Nmax = mellin_terms(out.Y_star);
  const auto table = inst.table(Nmax);
  const KernelEvaluator k(data);
  const auto gl = gauss_legendre(16);
  const int panels = static_cast<int>(std::lround((kUpperU - u_lo) / kPanelWidth));
  ComplexSum total, last;
  for (int p = 0; p < panels; ++p) {
    const double a = u_lo + p * kPanelWidth;
    ComplexSum panel;
    for (std::size_t j = 0; j < gl.x.size(); ++j) {
      const double u = a + kPanelWidth / 2.0 * (1.0 + gl.x[j]);
      const double y = std::exp(u);
      const cplx P = plain_sum(d, table.b, k, y, z, mellin_terms(y));
      panel.add(kPanelWidth / 2.0 * gl.w[j] * std::exp(-s * u) * P);
      ++out.evaluations;
    }
    total.add(panel.value());
    if (p >= panels - 2) last.add(panel.value());
  }
  out.last_chunk = last.value();
  const cplx I = total.value();
  if (!(std::abs(out.last_chunk) <= 1e-2 * std::abs(I)))
    throw ConvergenceError("mellin_transform_check: outer integral not converged at the upper limit");
  out.lhs = inst.evaluate(2.0 * s + 1.0) * I;
  out.defect = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

}  // namespace selberg
