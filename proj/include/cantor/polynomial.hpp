#pragma once

#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

// Ascending coefficients: coeffs[i] multiplies z^i.
using Poly = std::vector<cplx>;

Poly trim(Poly p, double rel_tol = 0.0);
int degree(const Poly& p);
Poly derivative(const Poly& p);
Poly multiply(const Poly& a, const Poly& b);
Poly subtract(const Poly& a, const Poly& b);
Poly scale(const Poly& p, cplx s);
// Divides by (z - r) and drops the remainder.
Poly deflate(const Poly& p, cplx r);
// Coefficients of p(c + w) in powers of w.
Poly taylor_shift(const Poly& p, cplx c);

struct Root {
  cplx z;
  int multiplicity = 1;
};

// All roots, clustered; clustered roots are polished as roots of the
// (multiplicity - 1)-th derivative.
std::vector<Root> roots(const Poly& p, double cluster_tol = 1e-6);

// Plain eigenvalue roots followed by Newton polishing, no clustering.
std::vector<cplx> simple_roots(const Poly& p);

cplx newton_polish(const Poly& p, cplx z, int iterations = 30);

}  // namespace cantor
