#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "profilekit/errors.hpp"
#include "profilekit/freeconv.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

using num::log_factorial;
using num::neg_inf;

LogPoly boxplus_n(const LogPoly& p1, const LogPoly& p2, int n) {
  if (n < 1) fail(errc::argument, "cap must be positive");
  if (p1.cap != n || p2.cap != n) fail(errc::argument, "boxplus_n requires both caps equal n");
  if (p1.reflected != p2.reflected)
    fail(errc::argument, "boxplus_n requires a shared reflection convention");
  const int d1 = p1.deg();
  const int d2 = p2.deg();
  if (d1 + d2 < n)
    fail(errc::zero_poly, "deg p1 + deg p2 < n: the convolution is identically zero");
  LogPoly out{n, p1.reflected, std::vector<double>(n + 1, neg_inf)};
  const int kmax = d1 + d2 - n;
  num::parallel_for(static_cast<std::size_t>(kmax) + 1, [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    std::vector<double> terms;
    const int j1_lo = std::max(0, n + k - d2);
    const int j1_hi = std::min(d1, n + k);
    terms.reserve(j1_hi - j1_lo + 1);
    for (int j1 = j1_lo; j1 <= j1_hi; ++j1) {
      const int j2 = n + k - j1;
      if (!num::finite(p1.logc[j1]) || !num::finite(p2.logc[j2])) continue;
      // pairing the factorial weights this way makes x^n a bit-exact identity:
      // at (j1,j2) = (k,n) or (n,k) both parentheses cancel to literal zero
      terms.push_back((p1.logc[j1] + p2.logc[j2]) +
                      ((log_factorial(j1) - log_factorial(k)) +
                       (log_factorial(j2) - log_factorial(n))));
    }
    if (!terms.empty()) out.logc[k] = num::logsumexp_sorted(std::move(terms));
  });
  return out;
}

LogPoly boxtimes_n(const LogPoly& p1, const LogPoly& p2, int n) {
  if (n < 1) fail(errc::argument, "cap must be positive");
  if (p1.cap != n || p2.cap != n) fail(errc::argument, "boxtimes_n requires both caps equal n");
  if (!p1.reflected || !p2.reflected)
    fail(errc::argument, "boxtimes_n requires both inputs reflected (nonnegative-rooted)");
  const int d1 = p1.deg();
  const int d2 = p2.deg();
  const int l1 = p1.low();
  const int l2 = p2.low();
  if (std::max(l1, l2) > std::min(d1, d2))
    fail(errc::zero_poly, "coefficient supports are disjoint: the product is identically zero");
  const int m = std::min(d1, d2);
  if (l1 >= m || l2 >= m)
    fail(errc::domain, "an input is divisible by x^min(deg1,deg2): rootedness not preserved");
  LogPoly out{n, true, std::vector<double>(n + 1, neg_inf)};
  for (int k = std::max(l1, l2); k <= std::min(d1, d2); ++k) {
    if (!num::finite(p1.logc[k]) || !num::finite(p2.logc[k])) continue;
    out.logc[k] = (p1.logc[k] - num::log_binom(n, k)) + p2.logc[k];
  }
  return out;
}

LogPoly hadamard_n(const LogPoly& p1, const LogPoly& p2) {
  if (p1.cap != p2.cap) fail(errc::argument, "hadamard_n requires equal caps");
  if (p1.reflected != p2.reflected)
    fail(errc::argument, "hadamard_n requires a shared reflection convention");
  if (std::max(p1.low(), p2.low()) > std::min(p1.deg(), p2.deg()))
    fail(errc::zero_poly, "coefficient supports are disjoint: the product is identically zero");
  LogPoly out{p1.cap, p1.reflected, std::vector<double>(p1.cap + 1, neg_inf)};
  for (int k = 0; k <= p1.cap; ++k) {
    if (num::finite(p1.logc[k]) && num::finite(p2.logc[k]))
      out.logc[k] = p1.logc[k] + p2.logc[k];
  }
  return out;
}

LogPoly t_poly(int n, int ell, int a, int b) {
  if (n < 1 || ell < 0 || a < 0 || b < 0) fail(errc::argument, "t_poly: bad parameters");
  const int delta = a - b;
  if (1.0 + static_cast<double>(delta) * ell / n <= 0.0)
    fail(errc::domain, "t_poly requires 1 + (a-b) ell/n > 0");
  const int jmin = ell == 0 ? 0 : (delta >= 0 ? b : a - ell * delta);
  if (jmin > n) fail(errc::degree, "t_poly index set is empty");
  LogPoly out{n, true, std::vector<double>(n + 1, neg_inf)};
  const double lbn = static_cast<double>(ell) * b * std::log(static_cast<double>(n));
  for (int j = jmin; j <= n; ++j) {
    double v = num::log_binom(n, j) - lbn;
    for (int i = 0; i < ell; ++i)
      v += std::lgamma(static_cast<double>(j + i * delta) + 1.0) -
           std::lgamma(static_cast<double>(j - b + i * delta) + 1.0);
    out.logc[j] = v;
  }
  return out;
}

LogPoly repeated_action(const LogPoly& q, int a, int b, int ell, int n) {
  if (ell < 0) fail(errc::argument, "repeated_action: ell must be nonnegative");
  if (q.cap != n) fail(errc::argument, "repeated_action requires cap(q) = n");
  if (!q.reflected) fail(errc::argument, "repeated_action requires q reflected");
  LogPoly cur = q;
  for (int i = 0; i < ell; ++i) cur = apply_Aab(cur, a, b, n);
  const int shift = ell * (a - b);
  LogPoly lhs{n, true, std::vector<double>(n + 1, neg_inf)};
  for (int j = 0; j <= n; ++j) {
    const int src = j + shift;
    if (src >= 0 && src <= cur.cap) lhs.logc[j] = cur.logc[src];
  }
  const LogPoly rhs = boxtimes_n(q, t_poly(n, ell, a, b), n);
  for (int k = 0; k <= n; ++k) {
    const bool f1 = num::finite(lhs.logc[k]);
    const bool f2 = num::finite(rhs.logc[k]);
    if (f1 != f2)
      fail(errc::consistency,
           "repeated_action support mismatch between the operator and boxtimes paths at index " +
               std::to_string(k));
    if (f1 && std::abs(lhs.logc[k] - rhs.logc[k]) > 1e-9)
      fail(errc::consistency,
           "repeated_action coefficient mismatch between the operator and boxtimes paths at "
           "index " +
               std::to_string(k));
  }
  return lhs;
}

}  // namespace profilekit
