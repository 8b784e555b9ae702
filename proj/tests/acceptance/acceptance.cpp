// Acceptance checks. One line per criterion: "criterion N: PASS|FAIL <details>".
// Usage: acceptance [--criterion N]; exit status 1 if any selected criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "selberg/meijer.hpp"
#include "selberg/mellin_kernel.hpp"
#include "selberg/riesz.hpp"
#include "selberg/zeros.hpp"

using namespace selberg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

std::string zeros_path() { return std::string(SELBERG_DATA_DIR) + "/zeta_zeros_100.txt"; }

Outcome kernel_closed_form() {
  const auto t0 = Clock::now();
  const auto z = make_zeta().data;
  const auto c = default_contours(z).first;
  double worst = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(kernel_Z(z, x, c) - 2.0 * std::expm1(-x * x)));
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t < 5.0, "max error " + sci(worst) + ", " + sci(t) + " s"};
}

Outcome meijer_identities() {
  const auto rows = cross_validate_identities();
  bool ok = rows.size() == 6;
  double worst = 0.0, imag = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.max_rel_defect);
    ok = ok && r.max_rel_defect <= 1e-8 && r.args.size() == 3;
    if (r.name == "bessel_pair") {
      imag = r.max_abs_imag;
      ok = ok && imag <= 1e-10;
    }
  }
  return {ok, std::to_string(rows.size()) + " identities, max rel defect " + sci(worst) + ", pair imag " + sci(imag)};
}

Outcome residue_relation() {
  double worst = 0.0;
  for (const char* name : {"zeta", "dirichlet:3:1", "dedekind:5"}) {
    const auto data = builtin(name).data;
    const auto [c, d] = default_contours(data);
    for (double x : {0.25, 1.0, 4.0, 16.0})
      worst = std::max(worst, std::abs(kernel_Z(data, x, c) - (kernel_Z_tilde(data, x, d) - residue_at_zero(data, x))));
  }
  double rz = 0.0, rq = 0.0;
  const auto zeta = make_zeta().data;
  SelbergData q;
  q.alpha = {{1, 2}, {1, 2}};
  q.beta = {0.0, 0.0};
  for (double x : {0.25, 1.0, 4.0, 16.0}) {
    rz = std::max(rz, std::abs(residue_at_zero(zeta, x) - 2.0));
    rq = std::max(rq, std::abs(residue_at_zero(q, x) + 4.0 * (std::log(x) + kEulerGamma)));
  }
  return {worst <= 1e-9 && rz <= 1e-10 && rq <= 1e-8,
          "Z vs Z~-Res " + sci(worst) + ", zeta residue " + sci(rz) + ", quadratic residue " + sci(rq)};
}

// max over the probe grid of the log ratio, compared with the K fitted on the
// fit grid; the bound "holds" when no probe exceeds 2K.
struct Envelope {
  double logK = -INFINITY;
  double worst_excess = -INFINITY;
};

Envelope envelope(const std::vector<double>& fit, const std::vector<double>& probe,
                  const std::function<double(double)>& log_ratio) {
  Envelope e;
  for (double x : fit) e.logK = std::max(e.logK, log_ratio(x));
  for (double x : probe) e.worst_excess = std::max(e.worst_excess, log_ratio(x) - e.logK);
  return e;
}

Outcome decay_bounds() {
  std::vector<double> small_fit, small_all, big_fit, big_all;
  for (int k = 0; k <= 30; ++k) {
    const double x = std::ldexp(1.0, -k);
    small_all.push_back(x);
    if (k <= 10) small_fit.push_back(x);
  }
  for (int i = 0; i <= 24; ++i) {
    const double x = 10.0 * std::pow(100.0, i / 24.0);
    big_all.push_back(x);
    if (i <= 12) big_fit.push_back(x);
  }
  bool ok = true;
  std::string detail;
  double fd_worst = 0.0;
  for (const char* name : {"zeta", "dirichlet:3:1", "dedekind:5", "dedekind:-4"}) {
    const auto data = builtin(name).data;
    const auto [c, d] = default_contours(data);
    const double e = -c.abscissa;
    const auto dc = decay_constants(data);
    const auto z0 = envelope(small_fit, small_all, [&](double x) { return std::log(std::abs(kernel_Z(data, x, c))) - e * std::log(x); });
    const auto z1 = envelope(small_fit, small_all,
                             [&](double x) { return std::log(std::abs(kernel_Z_prime(data, x, c))) - (e - 1.0) * std::log(x); });
    auto big = [&](int deriv, double extra) {
      return envelope(big_fit, big_all, [&, deriv, extra](double x) {
        return kernel_Z_tilde_scaled(data, x, {}, deriv).log_abs() + dc.C1 * std::pow(x, dc.C2) -
               (dc.C2 * dc.C3.real() + extra) * std::log(x);
      });
    };
    const auto t0 = big(0, 0.0);
    const auto t1 = big(1, dc.C4);
    const double excess = std::max({z0.worst_excess, z1.worst_excess, t0.worst_excess, t1.worst_excess});
    ok = ok && excess <= std::log(2.0);
    for (double x : {0.7, 1.3, 3.0}) {
      const double h = 1e-5;
      const cplx fd = (kernel_Z(data, x + h, c) - kernel_Z(data, x - h, c)) / (2.0 * h);
      const cplx an = kernel_Z_prime(data, x, c);
      fd_worst = std::max(fd_worst, std::abs(an - fd) / std::abs(an));
    }
    detail += std::string(name) + " K=(" + sci(std::exp(z0.logK)) + "," + sci(std::exp(z1.logK)) + "," +
              sci(std::exp(t0.logK)) + "," + sci(std::exp(t1.logK)) + ") ";
  }
  ok = ok && fd_worst <= 1e-6;
  return {ok, detail + "fd rel " + sci(fd_worst)};
}

Outcome mellin_identity() {
  const auto t0 = Clock::now();
  const auto odd = make_dirichlet(3, 1);
  double worst = 0.0;
  for (double s : {0.1, 0.25, 0.4})
    for (double z : {0.0, 0.5}) worst = std::max(worst, mellin_transform_check(odd, s, z).defect);
  const double t = seconds_since(t0);
  return {worst < 1e-4 && t < 120.0, "max defect " + sci(worst) + ", " + sci(t) + " s"};
}

int mobius(long n) {
  int m = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

Outcome dirichlet_inversion() {
  constexpr std::size_t N = 10000;
  double worst = 0.0;
  int count = 0;
  for (const char* name : {"zeta", "dirichlet:3:1", "dirichlet:4:1", "dirichlet:5:1", "dirichlet:5:2", "dirichlet:5:3",
                           "dirichlet:7:1", "dedekind:5", "dedekind:-4", "dedekind:8", "dedekind:-3"}) {
    const auto t = builtin(name).table(N);
    const auto conv = dirichlet_convolve(t.a, t.b);
    for (std::size_t n = 1; n <= N; ++n) worst = std::max(worst, std::abs(conv[n] - cplx(n == 1 ? 1.0 : 0.0)));
    ++count;
  }
  const auto zt = make_zeta().table(N);
  bool mu = true;
  for (std::size_t n = 1; n <= N; ++n)
    mu = mu && zt.b[n].imag() == 0.0 && static_cast<long>(std::lround(zt.b[n].real())) == mobius(static_cast<long>(n)) &&
         zt.b[n].real() == static_cast<double>(mobius(static_cast<long>(n)));
  return {worst <= 1e-12 && mu, std::to_string(count) + " instances, max |a*b - e| " + sci(worst) + ", zeta b = mu: " + (mu ? "yes" : "no")};
}

Outcome rhl_identity() {
  const auto t0 = Clock::now();
  const auto zeta = make_zeta();
  const auto zeros = load_zeros(zeros_path());
  const double sp = std::sqrt(kPi);
  const auto self = rhl_defect(zeta, sp, zeros, 100000);
  const auto r = rhl_defect(zeta, 2.0 * sp, zeros, 100000);
  const double t = seconds_since(t0);
  const bool ok = std::abs(self.lhs) <= 1e-10 && std::abs(r.defect) < 1e-2 && r.last_bracket < 1e-12 && t < 300.0;
  return {ok, "self-dual |LHS| " + sci(std::abs(self.lhs)) + ", |LHS-RHS| " + sci(std::abs(r.defect)) + ", last bracket " +
                  sci(r.last_bracket) + ", " + std::to_string(r.n_zeros_used) + " zeros, " + sci(t) + " s"};
}

Outcome riesz_scan() {
  const auto t0 = Clock::now();
  ScanOptions o;
  o.N = 1000000;
  o.corrected = true;
  const auto r = decay_scan(make_zeta(), 0.0, log_grid(1e2, 1e6, 17), o);
  const double t = seconds_since(t0);
  int used = 0;
  for (bool u : r.used) used += u;
  const bool ok = r.fitted_slope >= -0.5 && r.fitted_slope <= -0.15 && t < 600.0;
  return {ok, "slope " + sci(r.fitted_slope) + " +- " + sci(r.slope_stderr) + " from " + std::to_string(used) +
                  " of 17 points (window [-0.5, -0.15]), " + sci(t) + " s"};
}

Outcome bracketing() {
  const auto br = bracket_zeros(load_zeros(zeros_path()), 0.01);
  const int n = bracket_count(br);
  return {n == 100 && br.size() == 100, std::to_string(n) + " brackets from " + std::to_string(br.size()) + " zeros"};
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
  const int st = pclose(p);
  c.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const std::string json = "/tmp/selberg_acceptance_report.json";
  const std::vector<std::string> commands = {
      "kernel --instance dedekind:5 --x 0.8 --json " + json,
      "coeffs --instance dedekind:-4 --N 2000 --json " + json,
      "riesz --instance zeta --z 0 --ymin 1e2 --ymax 1e5 --points 9 --N 200000 --corrected --json " + json,
      "riesz --instance dirichlet:5:1 --z 0.5 --z-im 0.25 --ymin 1e2 --ymax 1e4 --points 5 --json " + json,
      "identity --instance zeta --eta 3.5449077018110318 --N 100000 --zeros " + zeros_path() + " --json " + json,
  };
  int identical = 0;
  for (const auto& c : commands) {
    std::vector<std::string> outs;
    for (const char* threads : {"1", "1", "8", "8"}) {
      const auto r = capture(std::string("RIESZ_THREADS=") + threads + " \"" SELBERG_CLI "\" " + c);
      outs.push_back(std::to_string(r.code) + "\n" + r.out + "\n" + slurp(json));
    }
    bool same = outs[0].rfind("0\n", 0) == 0;
    for (const auto& o : outs) same = same && o == outs[0];
    identical += same;
  }
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical over 2 runs x {1, 8} threads"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> all = {
      {1, kernel_closed_form}, {2, meijer_identities}, {3, residue_relation}, {4, decay_bounds},
      {5, mellin_identity},    {6, dirichlet_inversion}, {7, rhl_identity}, {8, riesz_scan},
      {9, bracketing},         {10, determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  bool ok = true;
  for (const auto& [id, fn] : all) {
    if (only != 0 && id != only) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
