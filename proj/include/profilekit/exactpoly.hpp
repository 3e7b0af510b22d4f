#pragma once

#include <gmpxx.h>

#include <vector>

#include "profilekit/logpoly.hpp"

namespace profilekit {

// dense rational polynomial, c[k] multiplies x^k; meant for small-degree
// ground-truth work only (deg <= 12), not for production evaluation
struct ExactPoly {
  std::vector<mpq_class> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
};

// prod (x - r) over integer roots; at most 12 of them
ExactPoly exact_from_roots(const std::vector<long>& roots);

// additive convolution of degree-<=n polynomials via the definition:
// d_k = (1/(k! n!)) * sum_{j1+j2=n+k} j1! j2! a_{j1} b_{j2}; requires n <= 8
ExactPoly boxplus_def_exact(const ExactPoly& p1, const ExactPoly& p2, int n);

// same operation computed a structurally different way: multiply the two
// polynomials under the monomial rule z^j * z^k = j!k!/(j+k+1)! z^{j+k+1}
// (integration-by-parts product), then take (1/n!) (d/dz)^{n+1}; n <= 8
ExactPoly boxplus_oracle(const ExactPoly& p1, const ExactPoly& p2, int n);

bool exact_equal(const ExactPoly& a, const ExactPoly& b);

// log-coefficient view; every coefficient must be >= 0 (guaranteed when all
// roots are nonpositive), else errc::domain
LogPoly exact_to_logpoly(const ExactPoly& p, int cap);

}  // namespace profilekit
