#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selberg/instances.hpp"
#include "selberg/meijer.hpp"

namespace selberg {

enum class KernelPath { Auto, Quadrature, ClosedForm, Custom };

std::string path_name(KernelPath p);

// Z(x) and the residue term Res_{s=0} G(s) x^{-s} for one data set.
// ClosedForm uses the Meijer-G reduction of Z-tilde minus the residue
// expansion; Quadrature integrates numerically and caches per argument.
// Copies share the cache. Safe to call from several threads.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const SelbergData& data, KernelPath path = KernelPath::Auto);
  static KernelEvaluator custom(std::function<cplx(double)> z, std::function<cplx(double)> residue = {});

  cplx Z(double x) const;
  cplx residue(double x) const;
  KernelPath path() const { return path_; }
  const std::optional<MeijerForm>& form() const { return form_; }

  // Empirical K with |Z(x)| <= K x^e on a dyadic grid in (0, 1].
  double fitted_small_x_constant(double e) const;

 private:
  KernelEvaluator() = default;
  cplx closed_Z(double x) const;
  cplx quadrature_Z(double x) const;

  struct Cache;
  KernelPath path_ = KernelPath::Auto;
  SelbergData data_;
  std::optional<MeijerForm> form_;
  PrefactorMap map_{};
  double log_kk_ = 0.0;
  long L_ = 1;
  bool expm1_case_ = false;
  std::shared_ptr<ResidueExpansion> residue_;
  std::shared_ptr<Cache> cache_;
  ContourSpec z_contour_{};
  std::function<cplx(double)> custom_z_, custom_res_;
};

struct RieszConfig {
  double y = 1.0;
  cplx z{0.0, 0.0};
  std::size_t N = 0;  // 0: automatic, max(1e4, 400 sqrt y)
  double tail_tol = std::numeric_limits<double>::infinity();
  double epsilon = 0.1;

  void validate() const;
};

struct RieszResult {
  cplx value{0.0, 0.0};
  cplx correction{0.0, 0.0};  // residue sum (zero for the plain sum)
  std::size_t N = 0;
  std::size_t h = 0;          // floor(y^{1/2 - eps}); correction runs over n < h
  double tail_bound = 0.0;
  double K_small = 0.0;       // fitted small-argument constant used in the bound
  double exponent = 0.0;      // small-argument exponent used in the bound
};

std::size_t auto_terms(double y);

// b = b_F(0..N'), N' >= cfg.N. The instance overloads build the table.
RieszResult riesz_P(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k, const RieszConfig& cfg);
RieszResult riesz_P_corrected(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k,
                              const RieszConfig& cfg);
RieszResult riesz_P(const Instance& inst, const RieszConfig& cfg, KernelPath path = KernelPath::Auto);
RieszResult riesz_P_corrected(const Instance& inst, const RieszConfig& cfg, KernelPath path = KernelPath::Auto);

// M_F(x) = sum_{n <= x} b(n); M_F(h, N) = sum_{h <= n <= N} b(n)/n, zero if N < h.
cplx summatory_M(std::span<const cplx> b, double x);
cplx partial_M(std::span<const cplx> b, std::size_t h, std::size_t N);
cplx summatory_M(const Instance& inst, double x);
cplx partial_M(const Instance& inst, std::size_t h, std::size_t N);

struct ScanOptions {
  std::size_t N = 0;  // 0: auto per y, capped at N_cap
  std::size_t N_cap = 2000000;
  std::optional<bool> corrected;  // default: corrected iff j_F != 0
  double epsilon = 0.1;
  double tail_tol = std::numeric_limits<double>::infinity();
  KernelPath path = KernelPath::Auto;
};

struct DecayScanResult {
  std::vector<double> y_grid;
  std::vector<cplx> values;
  std::vector<bool> used;
  std::vector<std::size_t> N;
  std::vector<std::size_t> h;
  std::vector<double> tail_bounds;
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  bool corrected = false;
};

std::vector<double> log_grid(double ymin, double ymax, int points);

DecayScanResult decay_scan(const SelbergData& data, std::span<const cplx> b, const KernelEvaluator& k, cplx z,
                           const std::vector<double>& y_grid, const ScanOptions& opt);
DecayScanResult decay_scan(const Instance& inst, cplx z, const std::vector<double>& y_grid, const ScanOptions& opt);

struct MellinCheck {
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double defect = 0.0;
  double u_lo = 0.0;      // integration range in u = log y
  double Y_star = 0.0;    // upper truncation exp(u_hi)
  cplx last_chunk{0.0, 0.0};
  int rhs_terms = 0;
  std::size_t evaluations = 0;
};

// F(2s+1) int_0^inf y^{-s-1} P(y) dy against (2/d) sum_t z^{2t}/(2t)! prod Gamma((2 alpha/d)(t - s) + conj beta).
// Requires 0 < Re s < 1/2, Re beta_i > 0 and an F evaluator.
MellinCheck mellin_transform_check(const Instance& inst, cplx s, cplx z, const Accuracy& quad = {});

}  // namespace selberg
