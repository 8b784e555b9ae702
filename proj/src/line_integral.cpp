#include "selberg/line_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selberg/complex_special.hpp"
#include "selberg/summation.hpp"

namespace selberg {

GammaProduct::GammaProduct(std::vector<GammaFactor> factors) : f_(std::move(factors)) {
  for (const auto& f : f_)
    if (!(f.a > 0.0)) throw std::invalid_argument("GammaProduct: factor scale a must be positive");
}

cplx GammaProduct::log_value(cplx s) const {
  cplx acc = 0.0;
  for (const auto& f : f_) acc += log_gamma(f.a * s + f.b);
  return acc;
}

cplx GammaProduct::log_derivative(cplx s) const {
  cplx acc = 0.0;
  for (const auto& f : f_) acc += f.a * digamma(f.a * s + f.b);
  return acc;
}

cplx GammaProduct::log_second_derivative(cplx s) const {
  cplx acc = 0.0;
  for (const auto& f : f_) acc += f.a * f.a * trigamma(f.a * s + f.b);
  return acc;
}

double GammaProduct::rightmost_pole() const {
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& f : f_) r = std::max(r, -f.b.real() / f.a);
  return r;
}

int GammaProduct::pole_order(cplx s0) const {
  int order = 0;
  for (const auto& f : f_) {
    const cplx w = f.a * s0 + f.b;
    const double n = std::round(w.real());
    if (n <= 0.0 && std::abs(w - cplx(n, 0.0)) < 1e-12) ++order;
  }
  return order;
}

double GammaProduct::nearest_other_pole(cplx s0) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : f_) {
    // poles at s = -(b + k)/a; the closest k is near -Re(a s0 + b).
    const double kc = -(f.a * s0 + f.b).real();
    const long k0 = std::max(0L, static_cast<long>(std::floor(kc)) - 2);
    for (long k = k0; k <= k0 + 5; ++k) {
      const cplx p = -(f.b + static_cast<double>(k)) / f.a;
      const double d = std::abs(p - s0);
      if (d > 1e-12) best = std::min(best, d);
    }
  }
  return best;
}

bool GammaProduct::real_coefficients() const {
  return std::all_of(f_.begin(), f_.end(), [](const GammaFactor& f) { return f.b.imag() == 0.0; });
}

double GammaProduct::sum_a() const {
  double s = 0.0;
  for (const auto& f : f_) s += f.a;
  return s;
}

LineResult line_integral(const GammaProduct& g, cplx log_x, double sigma, const LineOptions& opt) {
  opt.accuracy.validate();
  if (!(opt.step > 0.0)) throw std::invalid_argument("line_integral: step must be positive");
  if (g.pole_order(cplx(sigma, 0.0)) > 0) throw std::invalid_argument("line_integral: line passes through a pole");

  const bool symmetric = g.real_coefficients() && log_x.imag() == 0.0;
  const cplx inv_x = std::exp(-log_x);
  auto log_mag = [&](double t) {
    const cplx s(sigma, t);
    double l = (g.log_value(s) - s * log_x).real();
    if (opt.derivative) l += std::log(std::abs(s)) + (-log_x).real();
    return l;
  };

  const double curv = std::fabs(g.log_second_derivative(cplx(sigma, 0.0)).real());
  const double width = std::max(1.0, curv > 0.0 ? 1.0 / std::sqrt(curv) : 1.0);
  double im_shift = 0.0;
  for (const auto& f : g.factors()) im_shift = std::max(im_shift, std::fabs(f.b.imag()) / f.a);
  const double scan_min = std::max(opt.height_min, 4.0 * width + im_shift);
  const double floor = std::max(opt.accuracy.abs_floor, 1e-300);
  const double threshold = std::log(floor / 10.0);

  double peak = log_mag(0.0);
  if (!std::isfinite(peak)) {
    // Derivative integrand vanishes at s = 0 when sigma = 0; take a nearby value.
    peak = log_mag(1e-3);
  }
  auto scan = [&](double dir) {
    double t = 0.0, delta = 0.5 * width;
    for (int iter = 0; iter < 4000; ++iter) {
      const double tn = t + delta;
      const double l = log_mag(dir * tn);
      peak = std::max(peak, l);
      if (tn >= scan_min && l - peak < threshold) {
        double lo = t, hi = tn;
        for (int b = 0; b < 40; ++b) {
          const double mid = 0.5 * (lo + hi);
          if (log_mag(dir * mid) - peak < threshold)
            hi = mid;
          else
            lo = mid;
        }
        return std::max(hi, opt.height_min);
      }
      t = tn;
      delta *= 1.2;
    }
    throw ConvergenceError("line_integral: integrand does not decay along the line");
  };
  const double T_hi = scan(1.0);
  const double T_lo = symmetric ? T_hi : scan(-1.0);

  auto f = [&](double t) -> cplx {
    const cplx s(sigma, t);
    cplx v = std::exp(g.log_value(s) - s * log_x - peak);
    if (opt.derivative) v *= -s * inv_x;
    return v;
  };

  double h = opt.step * width;
  const long k_hi = static_cast<long>(std::ceil(T_hi / h));
  const long k_lo = symmetric ? 0 : static_cast<long>(std::ceil(T_lo / h));
  const double t_hi = k_hi * h, t_lo = -k_lo * h;

  LineResult res;
  res.abscissa = sigma;
  res.height_hi = t_hi;
  res.height_lo = -t_lo;

  ComplexSum total;
  std::size_t nodes = 0;
  auto add_node = [&](double t) {
    ++nodes;
    if (symmetric) {
      const double w = (t == 0.0) ? 1.0 : 2.0;
      total.add(cplx(w * f(t).real(), 0.0));
    } else {
      total.add(f(t));
    }
  };
  for (long k = -k_lo; k <= k_hi; ++k) add_node(k * h);
  cplx prev = h * total.value();
  const double abs_tol = opt.accuracy.abs_floor * width;
  // The exponent is formed from terms of size |peak| + |sigma log x|; its
  // rounding error bounds the attainable relative accuracy far out on the axis.
  const double cond = std::fabs(peak) + std::fabs(sigma * log_x.real());
  const double rel_tol = std::max(opt.accuracy.rel_tol, 16.0 * std::numeric_limits<double>::epsilon() * cond);
  for (int level = 1; level <= opt.accuracy.max_terms; ++level) {
    h *= 0.5;
    const long m_hi = static_cast<long>(std::llround(t_hi / h));
    const long m_lo = static_cast<long>(std::llround(-t_lo / h));
    for (long m = -m_lo; m <= m_hi; ++m)
      if (m % 2 != 0) add_node(m * h);
    const cplx cur = h * total.value();
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + abs_tol) {
      res.value = Scaled{cur / (2.0 * kPi), peak};
      res.step = h;
      res.refinements = level;
      res.nodes = nodes;
      return res;
    }
    prev = cur;
  }
  throw ConvergenceError("line_integral: no convergence within max_terms step halvings");
}

double saddle_abscissa(const GammaProduct& g, double log_x, double lower_bound) {
  auto dphi = [&](double s) { return g.log_derivative(cplx(s, 0.0)).real() - log_x; };
  double lo = lower_bound;
  if (dphi(lo) >= 0.0) return lo;
  double step = 1.0, hi = lo + step;
  while (dphi(hi) < 0.0) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (step > 1e15) throw ConvergenceError("saddle_abscissa: no saddle found");
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double d = dphi(s);
    if (d < 0.0)
      lo = s;
    else
      hi = s;
    const double d2 = g.log_second_derivative(cplx(s, 0.0)).real();
    double next = s - d / d2;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) <= 1e-12 * std::max(1.0, std::fabs(s))) return next;
    s = next;
  }
  return s;
}

cplx circle_residue(const GammaProduct& g, cplx s0, double log_x, double radius, int nodes) {
  ComplexSum sum;
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * kPi * (j + 0.5) / nodes;
    const cplx u = radius * std::exp(cplx(0.0, theta));
    const cplx s = s0 + u;
    sum.add(std::exp(g.log_value(s) - s * log_x) * u);
  }
  return sum.value() / static_cast<double>(nodes);
}

}  // namespace selberg
