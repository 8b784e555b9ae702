#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "manifest.hpp"
#include "selberg/instances.hpp"
#include "selberg/meijer.hpp"
#include "selberg/mellin_kernel.hpp"
#include "selberg/riesz.hpp"
#include "selberg/zeros.hpp"

using namespace selberg;
using namespace selberg::cli;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string instance = "zeta";
  std::string instance_file;
  std::string csv_path;
  std::string json_path;
};

void add_common(CLI::App* sub, Common& c, bool instance = true) {
  if (instance) {
    sub->add_option("--instance", c.instance, "zeta | dirichlet:q:index | dedekind:D");
    sub->add_option("--instance-file", c.instance_file, "JSON instance file (overrides --instance)");
  }
  sub->add_option("--csv", c.csv_path, "write the table here instead of stdout");
  sub->add_option("--json", c.json_path, "write the JSON report here");
}

Instance resolve(const Common& c) {
  return c.instance_file.empty() ? builtin(c.instance) : load_instance_file(c.instance_file);
}

std::string instance_label(const Common& c) { return c.instance_file.empty() ? c.instance : "file:" + c.instance_file; }

KernelPath parse_path(const std::string& s) {
  if (s == "auto") return KernelPath::Auto;
  if (s == "quadrature") return KernelPath::Quadrature;
  if (s == "closed") return KernelPath::ClosedForm;
  throw std::invalid_argument("--kernel must be auto, quadrature or closed");
}

ordered_json cj(cplx z) { return complex_json(z.real(), z.imag()); }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

// Table to --csv (or stdout); report to --json. When stdout_report is set and
// no --json was given, the report goes to stdout after the table.
void emit(const Common& c, RunManifest m, const std::string& table, ordered_json report, bool stdout_report) {
  if (!c.csv_path.empty()) m.outputs.push_back(c.csv_path);
  if (!c.json_path.empty()) m.outputs.push_back(c.json_path);
  ordered_json full;
  full["manifest"] = m.to_json();
  for (auto& [k, v] : report.items()) full[k] = v;
  write_text(c.csv_path, table);
  if (!c.json_path.empty())
    write_text(c.json_path, full.dump(2) + "\n");
  else if (stdout_report)
    write_text("", full.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernels, Riesz sums and zero-sum identities for Selberg-class L-functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // kernel
  Common kc;
  double kx = 1.0;
  bool tilde = false, prime = false;
  std::optional<double> abscissa;
  auto* kernel = app.add_subcommand("kernel", "evaluate Z, Z-tilde or a derivative at x");
  add_common(kernel, kc);
  kernel->add_option("--x", kx, "argument x > 0")->required();
  kernel->add_flag("--tilde", tilde, "Z-tilde instead of Z");
  kernel->add_flag("--prime", prime, "derivative in x");
  kernel->add_option("--abscissa", abscissa, "override the default line");

  // meijer-check
  Common mc;
  bool all = false;
  auto* meijer = app.add_subcommand("meijer-check", "quadrature vs closed form for the Meijer-G identities");
  add_common(meijer, mc, false);
  meijer->add_flag("--all", all, "run every identity")->required();

  // coeffs
  Common cc;
  std::size_t cN = 1000;
  auto* coeffs = app.add_subcommand("coeffs", "a_F(n) and b_F(n) for n <= N");
  add_common(coeffs, cc);
  coeffs->add_option("--N", cN, "largest n")->check(CLI::PositiveNumber);

  // riesz
  Common rc;
  double rz = 0.0, rz_im = 0.0, ymin = 1e2, ymax = 1e6, eps = 0.1;
  int points = 17;
  std::size_t rN = 0, rNcap = 2000000;
  bool corrected = false, plain = false;
  std::string rpath = "auto";
  auto* riesz = app.add_subcommand("riesz", "decay scan of the Riesz-type sum");
  add_common(riesz, rc);
  riesz->add_option("--z", rz, "Re z");
  riesz->add_option("--z-im", rz_im, "Im z");
  riesz->add_option("--ymin", ymin)->check(CLI::PositiveNumber);
  riesz->add_option("--ymax", ymax)->check(CLI::PositiveNumber);
  riesz->add_option("--points", points)->check(CLI::Range(2, 100000));
  riesz->add_option("--N", rN, "terms per point (0: automatic)");
  riesz->add_option("--N-cap", rNcap, "cap for the automatic term count");
  riesz->add_option("--epsilon", eps, "exponent margin in the residue correction");
  auto* corr_flag = riesz->add_flag("--corrected", corrected, "add the residue correction");
  riesz->add_flag("--plain", plain, "never add the residue correction")->excludes(corr_flag);
  riesz->add_option("--kernel", rpath, "auto | quadrature | closed");

  // mellin-check
  Common lc;
  double ls = 0.25, ls_im = 0.0, lz = 0.0, lz_im = 0.0;
  auto* mellin = app.add_subcommand("mellin-check", "Mellin transform identity of the Riesz sum");
  add_common(mellin, lc);
  mellin->add_option("--s", ls, "Re s, in (0, 1/2)");
  mellin->add_option("--s-im", ls_im, "Im s");
  mellin->add_option("--z", lz, "Re z");
  mellin->add_option("--z-im", lz_im, "Im z");

  // identity
  Common ic;
  double eta = 3.5449077018110318, bc = 0.01;
  std::string zeros_path;
  std::size_t iN = 100000;
  auto* identity = app.add_subcommand("identity", "modular identity with the zero sum");
  add_common(identity, ic);
  identity->add_option("--eta", eta, "eta > 0; nu = 1/(Q^2 eta)")->check(CLI::PositiveNumber);
  identity->add_option("--zeros", zeros_path, "zero ordinate list")->required();
  identity->add_option("--N", iN, "kernel terms")->check(CLI::PositiveNumber);
  identity->add_option("--c", bc, "bracketing constant")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (kernel->parsed()) {
      const Instance inst = resolve(kc);
      auto [zc, zt] = default_contours(inst.data);
      ContourSpec c = tilde ? zt : zc;
      if (abscissa) c.abscissa = *abscissa;
      cplx v;
      if (tilde)
        v = prime ? kernel_Z_tilde_prime(inst.data, kx, c) : kernel_Z_tilde(inst.data, kx, c);
      else
        v = prime ? kernel_Z_prime(inst.data, kx, c) : kernel_Z(inst.data, kx, c);
      RunManifest m{"kernel", instance_label(kc), {}, {}};
      m.parameters["x"] = kx;
      m.parameters["tilde"] = tilde;
      m.parameters["prime"] = prime;
      m.parameters["abscissa"] = c.abscissa;
      m.parameters["height_T"] = c.height_T;
      m.parameters["step"] = c.step;
      std::string table = "x,re,im\n" + fmt(kx) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
      ordered_json rep;
      rep["value"] = cj(v);
      emit(kc, m, table, rep, false);
    } else if (meijer->parsed()) {
      const auto rows = cross_validate_identities();
      std::string table = "identity,forms,args,max_rel_defect,max_abs_imag\n";
      ordered_json jr = ordered_json::array();
      for (const auto& r : rows) {
        std::string forms, args;
        for (std::size_t i = 0; i < r.forms.size(); ++i) forms += (i ? "+" : "") + form_name(r.forms[i]);
        for (std::size_t i = 0; i < r.args.size(); ++i) args += (i ? ";" : "") + fmt(r.args[i]);
        table += r.name + "," + forms + "," + args + "," + fmt(r.max_rel_defect) + "," + fmt(r.max_abs_imag) + "\n";
        jr.push_back({{"identity", r.name}, {"forms", forms}, {"args", r.args}, {"max_rel_defect", r.max_rel_defect},
                      {"max_abs_imag", r.max_abs_imag}});
      }
      RunManifest m{"meijer-check", "", {}, {}};
      m.parameters["all"] = all;
      ordered_json rep;
      rep["rows"] = jr;
      emit(mc, m, table, rep, false);
    } else if (coeffs->parsed()) {
      const Instance inst = resolve(cc);
      const auto t = inst.table(cN);
      std::string table = "n,a_re,a_im,b_re,b_im\n";
      for (std::size_t n = 1; n <= cN; ++n)
        table += std::to_string(n) + "," + fmt(t.a[n].real()) + "," + fmt(t.a[n].imag()) + "," + fmt(t.b[n].real()) +
                 "," + fmt(t.b[n].imag()) + "\n";
      RunManifest m{"coeffs", instance_label(cc), {}, {}};
      m.parameters["N"] = cN;
      emit(cc, m, table, ordered_json::object(), false);
    } else if (riesz->parsed()) {
      if (!(ymax > ymin)) throw std::invalid_argument("--ymax must exceed --ymin");
      const Instance inst = resolve(rc);
      ScanOptions o;
      o.N = rN;
      o.N_cap = rNcap;
      o.epsilon = eps;
      o.path = parse_path(rpath);
      if (corrected) o.corrected = true;
      if (plain) o.corrected = false;
      const cplx z(rz, rz_im);
      const auto r = decay_scan(inst, z, log_grid(ymin, ymax, points), o);
      std::string table = "y,re,im,abs,log10y,log10abs\n";
      for (std::size_t i = 0; i < r.y_grid.size(); ++i) {
        const double a = std::abs(r.values[i]);
        table += fmt(r.y_grid[i]) + "," + fmt(r.values[i].real()) + "," + fmt(r.values[i].imag()) + "," + fmt(a) + "," +
                 fmt(std::log10(r.y_grid[i])) + "," + fmt(std::log10(a)) + "\n";
      }
      RunManifest m{"riesz", instance_label(rc), {}, {}};
      m.parameters["z"] = cj(z);
      m.parameters["ymin"] = ymin;
      m.parameters["ymax"] = ymax;
      m.parameters["points"] = points;
      m.parameters["N"] = rN;
      m.parameters["N_cap"] = rNcap;
      m.parameters["epsilon"] = eps;
      m.parameters["corrected"] = r.corrected;
      m.parameters["kernel"] = rpath;
      ordered_json rep;
      rep["fitted_slope"] = r.fitted_slope;
      rep["stderr"] = r.slope_stderr;
      rep["intercept"] = r.intercept;
      rep["corrected"] = r.corrected;
      rep["N_used"] = r.N;
      rep["h"] = r.h;
      rep["tail_bounds"] = r.tail_bounds;
      rep["used_in_fit"] = r.used;
      emit(rc, m, table, rep, false);
    } else if (mellin->parsed()) {
      const Instance inst = resolve(lc);
      const cplx s(ls, ls_im), z(lz, lz_im);
      const auto r = mellin_transform_check(inst, s, z);
      std::string table = "s_re,s_im,z_re,z_im,lhs_re,lhs_im,rhs_re,rhs_im,defect\n" + fmt(ls) + "," + fmt(ls_im) + "," +
                          fmt(lz) + "," + fmt(lz_im) + "," + fmt(r.lhs.real()) + "," + fmt(r.lhs.imag()) + "," +
                          fmt(r.rhs.real()) + "," + fmt(r.rhs.imag()) + "," + fmt(r.defect) + "\n";
      RunManifest m{"mellin-check", instance_label(lc), {}, {}};
      m.parameters["s"] = cj(s);
      m.parameters["z"] = cj(z);
      ordered_json rep;
      rep["lhs"] = cj(r.lhs);
      rep["rhs"] = cj(r.rhs);
      rep["defect"] = r.defect;
      rep["u_lo"] = r.u_lo;
      rep["Y_star"] = r.Y_star;
      rep["last_chunk"] = cj(r.last_chunk);
      rep["rhs_terms"] = r.rhs_terms;
      rep["evaluations"] = r.evaluations;
      emit(lc, m, table, rep, false);
    } else if (identity->parsed()) {
      const Instance inst = resolve(ic);
      const auto zeros = load_zeros(zeros_path);
      const auto r = rhl_defect(inst, eta, zeros, iN, bc);
      const auto [zc, zt] = default_contours(inst.data);
      RunManifest m{"identity", instance_label(ic), {}, {}};
      m.parameters["eta"] = eta;
      m.parameters["zeros"] = zeros_path;
      m.parameters["N"] = iN;
      m.parameters["c"] = bc;
      ordered_json rep;
      rep["eta"] = r.eta;
      rep["nu"] = r.nu;
      rep["eta_nu_Q2"] = r.eta * r.nu * inst.data.Q * inst.data.Q;
      rep["lhs_eta_term"] = cj(r.lhs_eta_term);
      rep["lhs_nu_term"] = cj(r.lhs_nu_term);
      rep["lhs"] = cj(r.lhs);
      rep["zero_sum"] = cj(r.zero_sum);
      rep["residue_s1"] = cj(r.residue_s1);
      rep["residue_s0"] = cj(r.residue_s0);
      rep["rhs"] = cj(r.rhs);
      rep["defect"] = cj(r.defect);
      rep["abs_defect"] = std::abs(r.defect);
      rep["last_bracket"] = r.last_bracket;
      rep["n_brackets"] = r.n_brackets;
      rep["n_zeros_used"] = r.n_zeros_used;
      rep["n_terms_used"] = r.n_terms_used;
      rep["r"] = r.r;
      rep["r_statement"] = r.r_statement;
      rep["bracket_c"] = r.bracket_c;
      rep["contours"] = {{"z_abscissa", zc.abscissa}, {"z_height_T", zc.height_T}, {"z_tilde_abscissa", zt.abscissa},
                         {"z_tilde_height_T", zt.height_T}, {"step", zc.step}};
      rep["kernel_path"] = path_name(KernelEvaluator(inst.data).path());
      emit(ic, m, "", rep, true);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
