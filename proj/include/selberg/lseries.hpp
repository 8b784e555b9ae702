#pragma once

#include <span>

#include "selberg/common.hpp"

namespace selberg {

// Hurwitz zeta by Euler-Maclaurin summation; s != 1, a > 0.
cplx hurwitz_zeta(cplx s, double a);
// Borwein's accelerated alternating series divided by (1 - 2^{1-s}).
// Intended for Re s >= 0 and |Im s| <= 350.
cplx zeta_alternating(cplx s);
// Dispatches between the two.
cplx riemann_zeta(cplx s);
// sum_n chi(n) n^{-s} through Hurwitz zeta; values[k] = chi(k), k = 0..q-1.
cplx dirichlet_l(cplx s, std::span<const cplx> values);

}  // namespace selberg
