#include "profilekit/logpoly.hpp"

#include <algorithm>
#include <cmath>

#include "profilekit/errors.hpp"

namespace profilekit {

using num::log_add;
using num::neg_inf;

int LogPoly::deg() const {
  for (int k = static_cast<int>(logc.size()) - 1; k >= 0; --k)
    if (num::finite(logc[k])) return k;
  fail(errc::argument, "polynomial has no finite coefficient");
}

int LogPoly::low() const {
  for (int k = 0; k < static_cast<int>(logc.size()); ++k)
    if (num::finite(logc[k])) return k;
  fail(errc::argument, "polynomial has no finite coefficient");
}

LogPoly from_roots(const std::vector<double>& roots, int cap) {
  const int d = static_cast<int>(roots.size());
  if (cap < d) fail(errc::argument, "cap smaller than root count");
  for (double r : roots)
    if (r > 0.0 || std::isnan(r)) fail(errc::domain, "roots must be nonpositive");
  LogPoly p;
  p.cap = cap;
  p.logc.assign(cap + 1, neg_inf);
  p.logc[0] = 0.0;
  // multiply by (x + lam), lam = -root >= 0, low to high so partials stay short
  std::vector<double> cur(d + 1, neg_inf), next(d + 1, neg_inf);
  cur[0] = 0.0;
  for (int i = 0; i < d; ++i) {
    double lam = -roots[i];
    double llam = lam > 0.0 ? std::log(lam) : neg_inf;
    std::fill(next.begin(), next.end(), neg_inf);
    for (int k = 0; k <= i; ++k) next[k + 1] = cur[k];
    if (llam != neg_inf)
      for (int k = 0; k <= i; ++k) next[k] = log_add(next[k], cur[k] + llam);
    std::swap(cur, next);
  }
  for (int k = 0; k <= d; ++k) p.logc[k] = cur[k];
  return p;
}

LogPoly as_reflected(LogPoly p) {
  p.reflected = true;
  return p;
}

double evaluate_log(const LogPoly& p, double x) {
  if (!(x > 0.0)) fail(errc::domain, "evaluate_log needs x > 0; use evaluate_signed");
  const double lx = std::log(x);
  double m = neg_inf;
  const int n = static_cast<int>(p.logc.size()) - 1;
  for (int k = 0; k <= n; ++k) m = std::max(m, p.logc[k] + k * lx);
  double s = 0.0;
  bool hit = false;
  for (int k = 0; k <= n; ++k) {
    double t = p.logc[k] + k * lx;
    if (t == neg_inf) continue;
    if (!hit && t == m) { hit = true; continue; }  // anchor term once, exactly
    s += std::exp(t - m);
  }
  return m + std::log1p(s);
}

SignEval evaluate_signed(const LogPoly& p, double x) {
  const int n = static_cast<int>(p.logc.size()) - 1;
  if (x == 0.0) {
    if (num::finite(p.logc[0])) return {1, p.logc[0]};
    return {0, neg_inf};
  }
  if (x > 0.0) return {1, evaluate_log(p, x)};
  const double lx = std::log(-x);
  // even powers keep the coefficient sign, odd powers flip it
  double mp = neg_inf, mn = neg_inf;
  for (int k = 0; k <= n; ++k) {
    double t = p.logc[k] + k * lx;
    if (k % 2 == 0) mp = std::max(mp, t);
    else mn = std::max(mn, t);
  }
  auto group = [&](int parity, double m) {
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    bool hit = false;
    for (int k = parity; k <= n; k += 2) {
      double t = p.logc[k] + k * lx;
      if (t == neg_inf) continue;
      if (!hit && t == m) { hit = true; continue; }
      s += std::exp(t - m);
    }
    return m + std::log1p(s);
  };
  double lp = group(0, mp), ln = group(1, mn);
  if (ln == neg_inf) return {1, lp};
  if (lp == neg_inf) return {-1, ln};
  double d = lp - ln;
  if (std::abs(d) <= 1e-14) return {0, neg_inf};
  if (d > 0) return {1, lp + std::log1p(-std::exp(-d))};
  return {-1, ln + std::log1p(-std::exp(d))};
}

LogPoly derivative(const LogPoly& p, int b) {
  if (b < 0) fail(errc::argument, "derivative order must be >= 0");
  if (b == 0) return p;
  const int d = p.deg();
  if (d < b) fail(errc::degree, "derivative order exceeds degree; zero polynomial");
  LogPoly out;
  out.cap = p.cap - b;
  out.reflected = p.reflected;
  out.logc.assign(out.cap + 1, neg_inf);
  for (int k = 0; k + b <= p.cap; ++k) {
    if (!num::finite(p.logc[k + b])) continue;
    out.logc[k] = p.logc[k + b] + num::log_factorial(k + b) - num::log_factorial(k);
  }
  return out;
}

LogPoly apply_Aab(const LogPoly& p, int a, int b, int scale_n) {
  if (a < 0 || b < 0 || scale_n <= 0) fail(errc::argument, "apply_Aab needs a,b >= 0, scale_n > 0");
  const int shift = a - b;
  LogPoly out;
  out.cap = p.cap + shift;
  out.reflected = p.reflected;
  if (out.cap < 0) fail(errc::degree, "operator action empties the polynomial");
  out.logc.assign(out.cap + 1, neg_inf);
  const double lb = b * std::log(static_cast<double>(scale_n));
  bool any = false;
  for (int j = b; j <= p.cap; ++j) {
    if (!num::finite(p.logc[j])) continue;
    out.logc[j + shift] = p.logc[j] + num::log_factorial(j) - num::log_factorial(j - b) - lb;
    any = true;
  }
  if (!any) fail(errc::degree, "operator action gives the zero polynomial");
  return out;
}

EmpiricalMeasure empirical_measure(const LogPoly& p) {
  std::vector<double> rts = roots(p);
  EmpiricalMeasure m;
  m.cap = p.cap;
  if (p.reflected) {
    m.infinity_sign = +1;
    m.atoms.reserve(rts.size());
    for (auto it = rts.rbegin(); it != rts.rend(); ++it) m.atoms.push_back(-*it);
  } else {
    m.infinity_sign = -1;
    m.atoms = std::move(rts);
  }
  std::sort(m.atoms.begin(), m.atoms.end());
  m.infinity_mass = static_cast<double>(p.cap - p.deg()) / p.cap;
  return m;
}

EmpiricalMeasure make_measure(std::vector<double> atoms, int cap, int infinity_sign) {
  if (cap <= 0 || static_cast<int>(atoms.size()) > cap)
    fail(errc::argument, "measure needs 0 < atoms.count <= cap");
  if (infinity_sign != -1 && infinity_sign != 1) fail(errc::argument, "infinity_sign is +-1");
  EmpiricalMeasure m;
  std::sort(atoms.begin(), atoms.end());
  m.atoms = std::move(atoms);
  m.cap = cap;
  m.infinity_sign = infinity_sign;
  m.infinity_mass = static_cast<double>(cap - m.atoms.size()) / cap;
  return m;
}

}  // namespace profilekit
