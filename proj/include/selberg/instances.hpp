#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "selberg/lfunction.hpp"

namespace selberg {

struct Instance {
  std::string id;
  SelbergData data;
  // a(0..N), a(0) = 0.
  std::function<std::vector<cplx>(std::size_t)> coefficients;
  // F(s); empty when no evaluator is known (e.g. plain coefficient files).
  std::function<cplx(cplx)> evaluate;
  bool real_coefficients = false;

  CoefficientTable table(std::size_t N) const { return CoefficientTable::from_a(coefficients(N)); }
  bool has_evaluator() const { return static_cast<bool>(evaluate); }
};

Instance make_zeta();
Instance make_dirichlet(long q, long index);
Instance make_dedekind_quadratic(long D);

// Grammar: "zeta" | "dirichlet:q:index" | "dedekind:D" (alias "dedekind_quadratic:D").
Instance builtin(std::string_view name);

// Instance file (JSON): {Q, alpha: [[m,n],...], beta: [[re,im],...], omega: [re,im], k_F,
//                        euler: {"p": [[re,im],...], ...} | coefficients: [[re,im],...]}.
Instance parse_instance_json(std::string_view text, std::string id);
Instance load_instance_file(const std::string& path);

}  // namespace selberg
