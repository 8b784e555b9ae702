#include "selberg/instances.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "selberg/characters.hpp"
#include "selberg/lseries.hpp"

namespace selberg {
namespace {

EulerFactors euler_from(std::size_t N, const std::function<std::vector<cplx>(long)>& roots) {
  EulerFactors f;
  for (long p : primes_up_to(static_cast<long>(N))) f[p] = EulerFactor{p, roots(p)};
  return f;
}

std::vector<cplx> real_chi_values(long D) {
  const long q = std::labs(D);
  std::vector<cplx> v(static_cast<std::size_t>(q));
  for (long a = 0; a < q; ++a) v[static_cast<std::size_t>(a)] = static_cast<double>(kronecker(D, a));
  return v;
}

long parse_long(std::string_view s, std::string_view what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("instance: cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
}

cplx json_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("instance file: complex must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

Instance make_zeta() {
  Instance inst;
  inst.id = "zeta";
  inst.data.Q = 1.0 / std::sqrt(kPi);
  inst.data.alpha = {{1, 2}};
  inst.data.beta = {0.0};
  inst.data.omega = 1.0;
  inst.data.k_F = 1;
  inst.coefficients = [](std::size_t N) {
    return coefficients_from_euler(euler_from(N, [](long) { return std::vector<cplx>{1.0}; }), N);
  };
  inst.evaluate = [](cplx s) { return riemann_zeta(s); };
  inst.real_coefficients = true;
  return inst;
}

Instance make_dirichlet(long q, long index) {
  auto chi = std::make_shared<DirichletCharacter>(q, index);
  if (!chi->is_primitive())
    throw std::invalid_argument("dirichlet:" + std::to_string(q) + ":" + std::to_string(index) +
                                " is not primitive (conductor " + std::to_string(chi->conductor()) + ")");
  if (q == 1) throw std::invalid_argument("dirichlet: modulus 1 is the zeta function; use 'zeta'");
  const int a = chi->parity();
  Instance inst;
  inst.id = "dirichlet:" + std::to_string(q) + ":" + std::to_string(index);
  inst.data.Q = std::sqrt(static_cast<double>(q) / kPi);
  inst.data.alpha = {{1, 2}};
  inst.data.beta = {0.5 * a};
  const cplx ia = a == 0 ? cplx(1.0) : cplx(0.0, 1.0);
  inst.data.omega = chi->gauss_sum() / (ia * std::sqrt(static_cast<double>(q)));
  inst.data.k_F = 0;
  inst.coefficients = [chi](std::size_t N) {
    return coefficients_from_euler(euler_from(N, [&](long p) { return std::vector<cplx>{(*chi)(p)}; }), N);
  };
  inst.evaluate = [chi](cplx s) { return dirichlet_l(s, chi->values()); };
  inst.real_coefficients = chi->is_real();
  return inst;
}

Instance make_dedekind_quadratic(long D) {
  if (!is_fundamental_discriminant(D))
    throw std::invalid_argument("dedekind:" + std::to_string(D) + ": not a fundamental discriminant");
  auto chi = std::make_shared<std::vector<cplx>>(real_chi_values(D));
  Instance inst;
  inst.id = "dedekind:" + std::to_string(D);
  const double absD = static_cast<double>(std::labs(D));
  if (D > 0) {
    inst.data.Q = std::sqrt(absD) / kPi;
    inst.data.alpha = {{1, 2}, {1, 2}};
    inst.data.beta = {0.0, 0.0};
  } else {
    inst.data.Q = std::sqrt(absD) / (2.0 * kPi);
    inst.data.alpha = {{1, 1}};
    inst.data.beta = {0.0};
  }
  inst.data.omega = 1.0;
  inst.data.k_F = 1;
  inst.coefficients = [D](std::size_t N) {
    return coefficients_from_euler(
        euler_from(N, [D](long p) { return std::vector<cplx>{1.0, static_cast<double>(kronecker(D, p))}; }), N);
  };
  inst.evaluate = [chi](cplx s) { return riemann_zeta(s) * dirichlet_l(s, *chi); };
  inst.real_coefficients = true;
  return inst;
}

Instance builtin(std::string_view name) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = name.find(':', start);
    parts.push_back(name.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() == 1 && parts[0] == "zeta") return make_zeta();
  if (parts.size() == 3 && parts[0] == "dirichlet")
    return make_dirichlet(parse_long(parts[1], "modulus"), parse_long(parts[2], "character index"));
  if (parts.size() == 2 && (parts[0] == "dedekind" || parts[0] == "dedekind_quadratic"))
    return make_dedekind_quadratic(parse_long(parts[1], "discriminant"));
  throw std::invalid_argument("unknown instance '" + std::string(name) +
                              "' (expected zeta, dirichlet:q:index or dedekind:D)");
}

Instance parse_instance_json(std::string_view text, std::string id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("instance file: " + std::string(e.what()));
  }
  try {
    Instance inst;
    inst.id = std::move(id);
    inst.data.Q = j.at("Q").get<double>();
    for (const auto& a : j.at("alpha")) {
      if (a.is_array() && a.size() == 2)
        inst.data.alpha.push_back({a.at(0).get<long>(), a.at(1).get<long>()});
      else
        throw std::invalid_argument("instance file: alpha entries must be [m, n]");
    }
    for (const auto& b : j.at("beta")) inst.data.beta.push_back(json_complex(b));
    inst.data.omega = json_complex(j.at("omega"));
    inst.data.k_F = j.at("k_F").get<int>();
    inst.data.validate();

    const bool has_euler = j.contains("euler");
    const bool has_coeffs = j.contains("coefficients");
    if (has_euler == has_coeffs)
      throw std::invalid_argument("instance file: exactly one of 'euler' or 'coefficients' is required");
    bool real = true;
    if (has_euler) {
      auto factors = std::make_shared<EulerFactors>();
      for (const auto& [key, roots] : j.at("euler").items()) {
        const long p = parse_long(key, "prime");
        EulerFactor f{p, {}};
        for (const auto& r : roots) {
          f.roots.push_back(json_complex(r));
          if (f.roots.back().imag() != 0.0) real = false;
          if (std::abs(f.roots.back()) > 1.0 + 1e-12)
            throw std::invalid_argument("instance file: Euler root with modulus > 1 at p = " + key);
        }
        (*factors)[p] = std::move(f);
      }
      inst.coefficients = [factors](std::size_t N) { return coefficients_from_euler(*factors, N); };
    } else {
      auto a = std::make_shared<std::vector<cplx>>(1, cplx(0.0));
      for (const auto& c : j.at("coefficients")) {
        a->push_back(json_complex(c));
        if (a->back().imag() != 0.0) real = false;
      }
      inst.coefficients = [a](std::size_t N) {
        if (N + 1 > a->size())
          throw std::invalid_argument("instance file: only " + std::to_string(a->size() - 1) +
                                      " coefficients available, " + std::to_string(N) + " requested");
        return std::vector<cplx>(a->begin(), a->begin() + static_cast<std::ptrdiff_t>(N + 1));
      };
    }
    inst.real_coefficients = real;
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("instance file: " + std::string(e.what()));
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str(), "file:" + path);
}

}  // namespace selberg
