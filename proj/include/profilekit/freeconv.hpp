#pragma once

#include "profilekit/logpoly.hpp"

namespace profilekit {

// finite free additive convolution at degree cap n; both inputs must share
// cap n and the reflection convention
LogPoly boxplus_n(const LogPoly& p1, const LogPoly& p2, int n);

// finite free multiplicative convolution; both inputs reflected
// (nonnegative-rooted), logc[k] = (logc1[k] - log C(n,k)) + logc2[k], so the
// generator built by t_poly(n, 0, 0, 0) is a bit-exact left identity
LogPoly boxtimes_n(const LogPoly& p1, const LogPoly& p2, int n);

// coefficientwise product: logc[k] = logc1[k] + logc2[k]
LogPoly hadamard_n(const LogPoly& p1, const LogPoly& p2);

// the repeated-action generator polynomial (reflected); ell = 0 gives the
// boxtimes identity with binomial log-coefficients
LogPoly t_poly(int n, int ell, int a, int b);

// ell-fold A_{a,b} = n^{-b} z^a (d/dz)^b followed by the monomial shift
// z^{-ell (a-b)}; cross-checked coefficientwise against
// boxtimes_n(q, t_poly(n, ell, a, b)) to 1e-9 before returning
LogPoly repeated_action(const LogPoly& q, int a, int b, int ell, int n);

}  // namespace profilekit
