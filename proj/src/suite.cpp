#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/errors.hpp"
#include "profilekit/exactpoly.hpp"
#include "profilekit/freeconv.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/numeric.hpp"
#include "profilekit/profile.hpp"
#include "profilekit/suite.hpp"
#include "profilekit/transforms.hpp"

namespace profilekit {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool same_logc(const LogPoly& a, const LogPoly& b) {
  if (a.cap != b.cap) return false;
  for (int k = 0; k <= a.cap; ++k) {
    const bool f1 = num::finite(a.logc[k]);
    const bool f2 = num::finite(b.logc[k]);
    if (f1 != f2) return false;
    if (f1 && a.logc[k] != b.logc[k]) return false;
  }
  return true;
}

// exact boxplus on both oracle paths plus a floating cross-check
CriterionResult crit1(unsigned seed) {
  CriterionResult r{1, "exact-boxplus-oracle", false, "", 0.0};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick_n(1, 6);
  std::uniform_int_distribution<int> pick_root(0, 9);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = pick_n(rng);
    std::vector<long> r1(n), r2(n);
    for (int i = 0; i < n; ++i) r1[i] = -static_cast<long>(pick_root(rng));
    for (int i = 0; i < n; ++i) r2[i] = -static_cast<long>(pick_root(rng));
    const ExactPoly e1 = exact_from_roots(r1);
    const ExactPoly e2 = exact_from_roots(r2);
    const ExactPoly a = boxplus_def_exact(e1, e2, n);
    const ExactPoly b = boxplus_oracle(e1, e2, n);
    if (!exact_equal(a, b)) {
      r.detail = "oracle paths disagree in exact rationals at trial " + std::to_string(trial);
      return r;
    }
    const LogPoly lf = boxplus_n(exact_to_logpoly(e1, n), exact_to_logpoly(e2, n), n);
    const LogPoly le = exact_to_logpoly(a, n);
    for (int k = 0; k <= n; ++k) {
      const bool f1 = num::finite(lf.logc[k]);
      const bool f2 = num::finite(le.logc[k]);
      if (f1 != f2) {
        r.detail = "floating support mismatch at trial " + std::to_string(trial);
        return r;
      }
      if (!f1) continue;
      const double d = std::abs(lf.logc[k] - le.logc[k]) / (1.0 + std::abs(le.logc[k]));
      worst = std::max(worst, d);
    }
  }
  if (worst > 1e-12) {
    r.detail = fmt("floating path off the exact oracle: rel %.3e > 1e-12", worst);
    return r;
  }
  const ExactPoly sq = exact_from_roots({-1, -1});
  if (!exact_equal(boxplus_def_exact(sq, sq, 2), exact_from_roots({-2, -2}))) {
    r.detail = "(x+1)^2 [+]_2 (x+1)^2 != (x+2)^2";
    return r;
  }
  r.pass = true;
  r.detail = fmt("100 pairs exact on both paths; float rel dev %.2e; (x+2)^2 case ok", worst);
  return r;
}

// Dirac additivity at n = 200
CriterionResult crit2() {
  CriterionResult r{2, "dirac-additivity", false, "", 0.0};
  const int n = 200;
  const LogPoly p1 = from_roots(std::vector<double>(n, -1.0), n);
  const LogPoly p2 = from_roots(std::vector<double>(n, -3.0), n);
  const std::vector<double> rts = roots(boxplus_n(p1, p2, n));
  if (static_cast<int>(rts.size()) != n) {
    r.detail = "expected 200 roots, got " + std::to_string(rts.size());
    return r;
  }
  double worst = 0.0;
  for (double x : rts) worst = std::max(worst, std::abs(x + 4.0));
  r.pass = worst <= 1e-8;
  r.detail = fmt("max |root + 4| = %.3e (tol 1e-8)", worst);
  return r;
}

// R-additivity of the convolution at the transform level, n = 200 vs 400
CriterionResult crit3() {
  CriterionResult r{3, "additive-transform-limit", false, "", 0.0};
  const auto sup_err = [](int n) {
    const std::vector<double> rs = linspace(-1.0, 0.0, n);
    const LogPoly p = from_roots(rs, n);
    const EmpiricalMeasure mp = make_measure(rs, n, -1);
    const EmpiricalMeasure mc = empirical_measure(boxplus_n(p, p, n));
    double sup = 0.0;
    for (double s : linspace(0.05, 0.5, 10))
      sup = std::max(sup, std::abs(r_transform(mc, s) - 2.0 * r_transform(mp, s)));
    return sup;
  };
  const double e200 = sup_err(200);
  const double e400 = sup_err(400);
  r.pass = e400 <= 0.02 && e400 <= 0.75 * e200;
  r.detail = fmt2("sup|R_conv - 2R| = %.3e at n=400, %.3e at n=200 (need <=0.02 and <=0.75x)",
                  e400, e200);
  return r;
}

// S-multiplicativity of the convolution at the transform level, n = 400
CriterionResult crit4() {
  CriterionResult r{4, "multiplicative-transform-limit", false, "", 0.0};
  const int n = 400;
  const std::vector<double> rs = linspace(-2.0, -1.0, n);
  const LogPoly p = as_reflected(from_roots(rs, n));
  std::vector<double> atoms(n);
  for (int i = 0; i < n; ++i) atoms[i] = -rs[i];
  const EmpiricalMeasure mp = make_measure(atoms, n, +1);
  const EmpiricalMeasure mc = empirical_measure(boxtimes_n(p, p, n));
  double sup = 0.0;
  for (double t : linspace(-0.6, -0.1, 10)) {
    const double s1 = s_transform(mp, t);
    sup = std::max(sup, std::abs(s_transform(mc, t) - s1 * s1));
  }
  r.pass = sup <= 0.02;
  r.detail = fmt("sup|S_conv - S^2| = %.3e at n=400 (tol 0.02)", sup);
  return r;
}

// degree law: mass at the signed infinity is exact
CriterionResult crit5() {
  CriterionResult r{5, "infinity-atoms-degree-law", false, "", 0.0};
  const int n = 100;
  const LogPoly p1 = from_roots(std::vector<double>(60, -1.0), n);
  const LogPoly p2 = from_roots(std::vector<double>(70, -2.0), n);
  const LogPoly conv = boxplus_n(p1, p2, n);
  const EmpiricalMeasure m = empirical_measure(conv);
  const bool deg_ok = conv.deg() == 30 && static_cast<int>(m.atoms.size()) == 30;
  r.pass = deg_ok && m.infinity_mass == 0.7 && m.infinity_sign == -1;
  r.detail = "deg 60+70-100 -> " + std::to_string(conv.deg()) +
             fmt(", infinity_mass = %.17g (want exactly 0.7)", m.infinity_mass);
  return r;
}

// half-order repeated differentiation against the analytic bulk law
CriterionResult crit6() {
  CriterionResult r{6, "derivative-flow-bulk", false, "", 0.0};
  const int n = 600, ell = 300;
  const double kappa = 0.5;
  std::vector<double> rs(n);
  for (int j = 1; j <= n; ++j) rs[j - 1] = -static_cast<double>(j) / n;
  const LogPoly q = as_reflected(from_roots(rs, n));
  const EmpiricalMeasure m = empirical_measure(repeated_action(q, 0, 1, ell, n));
  std::vector<double> ys;  // surviving roots mapped to [-1,1]; the z^ell block sits at 0
  for (double x : m.atoms)
    if (x > 1e-9) ys.push_back(2.0 * x - 1.0);
  if (static_cast<int>(ys.size()) != n - ell) {
    r.detail = "expected 300 nonzero roots, got " + std::to_string(ys.size());
    return r;
  }
  const double zk = z_kappa(kappa);
  const double edge = y_kappa(kappa, zk);
  double gerr = 0.0;
  for (double c : {1.5, 2.0}) {
    const double z = c * edge;
    double gemp = 0.0;
    for (double y : ys) gemp += 1.0 / (z - y);
    gemp /= n;
    gerr = std::max(gerr, std::abs(gemp - mu_kappa_cauchy(kappa, z)));
  }
  const double lo_err = std::abs(ys.front() + edge);
  const double hi_err = std::abs(ys.back() - edge);
  r.pass = gerr <= 1e-2 && lo_err <= 0.05 && hi_err <= 0.05;
  r.detail = fmt2("|G_emp - Y^-1| = %.3e (tol 1e-2); support end errs %.3e", gerr,
                  std::max(lo_err, hi_err));
  return r;
}

// Lambert-law generator polynomial: multiplicity at 1, bulk edge, Cauchy match
CriterionResult crit7() {
  CriterionResult r{7, "lambert-law-t-poly", false, "", 0.0};
  const int n = 400, ell = 200;
  const LogPoly tp = t_poly(n, ell, 1, 1);
  const EmpiricalMeasure m = empirical_measure(tp);
  if (static_cast<int>(m.atoms.size()) != n) {
    r.detail = "expected 400 roots, got " + std::to_string(m.atoms.size());
    return r;
  }
  int ones = 0;
  double mx_other = 0.0;
  for (double x : m.atoms) {
    if (std::abs(x - 1.0) <= 0.01)
      ++ones;
    else
      mx_other = std::max(mx_other, x);
  }
  const double bulk_edge = 0.5 * std::exp(0.5) + 0.05;
  double gerr = 0.0;
  for (double t : {2.0, 3.0, 5.0}) {
    double gemp = 0.0;
    for (double x : m.atoms) gemp += 1.0 / (t - x);
    gemp /= n;
    const double gref = nu_aa_cauchy(1.0, 0.5, {t, 0.0}).real();
    gerr = std::max(gerr, std::abs(gemp - gref));
  }
  r.pass = ones == n - ell && mx_other <= bulk_edge && gerr <= 1e-2;
  r.detail = "roots at 1: " + std::to_string(ones) +
             fmt2(" (want 200); bulk max %.4f (cap %.4f); ", mx_other, bulk_edge) +
             fmt("|G_emp - G| = %.3e", gerr);
  return r;
}

// Bernoulli split under 150-fold normalized differentiation
CriterionResult crit8() {
  CriterionResult r{8, "bernoulli-split", false, "", 0.0};
  const int n = 500, ell = 150;
  const LogPoly q = as_reflected(from_roots(std::vector<double>(n, -1.0), n));
  const EmpiricalMeasure m = empirical_measure(repeated_action(q, 0, 1, ell, n));
  int zeros = 0, ones = 0;
  for (double x : m.atoms) {
    if (std::abs(x) <= 1e-6) ++zeros;
    if (std::abs(x - 1.0) <= 1e-3) ++ones;
  }
  const double m0 = static_cast<double>(zeros) / n;
  const double m1 = static_cast<double>(ones) / n;
  r.pass = zeros == ell && ones == n - ell && zeros + ones == static_cast<int>(m.atoms.size()) &&
           std::abs(m0 - 0.3) <= 1e-3 && std::abs(m1 - 0.7) <= 1e-3;
  r.detail = fmt2("root masses at {0,1} = (%.4f, %.4f), want (0.3, 0.7) within 1e-3", m0, m1);
  return r;
}

// coefficient profile of the rising-grid polynomial vs its analytic limit
CriterionResult crit9() {
  CriterionResult r{9, "stirling-profile", false, "", 0.0};
  const int n = 2000;
  std::vector<double> rs(n);
  for (int j = 0; j < n; ++j) rs[j] = -static_cast<double>(j) / n;
  const LogPoly p = from_roots(rs, n);
  double sup = 0.0;
  for (int k = 200; k <= 1800; ++k) {
    const double alpha = static_cast<double>(k) / n;
    sup = std::max(sup, std::abs(p.logc[k] / n - stirling_profile(alpha)));
  }
  r.pass = sup <= 0.02;
  r.detail = fmt("sup|logc/n - g_S| = %.3e on alpha in [0.1, 0.9] (tol 0.02)", sup);
  return r;
}

// measure -> profile round trip at n = 1000 and Legendre duality on 512 grids
CriterionResult crit10() {
  CriterionResult r{10, "profile-roundtrip-duality", false, "", 0.0};
  const int n = 1000;
  std::vector<double> atoms(n);
  for (int j = 1; j <= n; ++j) atoms[j - 1] = -2.0 + static_cast<double>(j) / n;
  const EmpiricalMeasure mu = make_measure(atoms, n, -1);
  const TiltingContext ctx = tilting_from_measure(mu);
  const Profile emp = empirical_profile(from_roots(atoms, n));
  double rt = 0.0;
  for (int k = 50; k <= 950; ++k) {
    const double alpha = static_cast<double>(k) / n;
    const double t = ctx.phi_inverse(alpha);
    rt = std::max(rt, std::abs(emp.g[k] - (ctx.psi(t) - alpha * std::log(t))));
  }

  const auto duality_sup = [](const TiltingContext& c, const Profile& prof) {
    const std::vector<double> us = linspace(-12.0, 12.0, 512);
    std::vector<double> fs(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) fs[i] = -c.psi(std::exp(us[i]));
    double sup = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      const double lt = legendre(us, fs, prof.grid[i]);
      sup = std::max(sup, std::abs(lt - (-prof.g[i] + prof.Mg)));
    }
    return sup;
  };
  const double d1 = duality_sup(ctx, profile_from_measure(mu));
  const TiltingContext cu = TiltingContext::from_z_uniform(-2.0, -1.0);
  const double d2 = duality_sup(cu, profile_from_measure(uniform_measure(-2.0, -1.0)));

  r.pass = rt <= 0.02 && d1 <= 2e-3 && d2 <= 2e-3;
  r.detail = fmt2("round trip sup = %.3e (tol 0.02); duality sup = %.3e (tol 2e-3)", rt,
                  std::max(d1, d2));
  return r;
}

bool newton_ok(const LogPoly& p) {
  for (int k = 1; k < p.cap; ++k) {
    if (!num::finite(p.logc[k - 1]) || !num::finite(p.logc[k]) || !num::finite(p.logc[k + 1]))
      continue;
    if (2.0 * p.logc[k] + 1e-9 < p.logc[k - 1] + p.logc[k + 1]) return false;
  }
  return true;
}

// property suites: Newton log-concavity, dual-path coherence, Lambert
// residuals, convolution identities
CriterionResult crit11() {
  CriterionResult r{11, "property-suites", false, "", 0.0};

  const std::vector<double> grid300 = linspace(-1.0, 0.0, 300);
  const LogPoly pa = from_roots(grid300, 300);
  const LogPoly pr = as_reflected(from_roots(linspace(-2.0, -1.0, 300), 300));
  const std::vector<LogPoly> constructed = {
      pa,
      boxplus_n(pa, pa, 300),
      pr,
      boxtimes_n(pr, pr, 300),
      hadamard_n(pr, pr),
      t_poly(400, 200, 1, 1),
      repeated_action(pr, 0, 1, 60, 300),
  };
  for (std::size_t i = 0; i < constructed.size(); ++i) {
    if (!newton_ok(constructed[i])) {
      r.detail = "Newton log-concavity fails on constructed polynomial " + std::to_string(i);
      return r;
    }
  }

  const int n = 500;
  const std::vector<double> atoms = linspace(-2.0, -1.0, n);
  const EmpiricalMeasure mu = make_measure(atoms, n, -1);
  std::vector<double> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = -atoms[i];
  const EmpiricalMeasure nu = make_measure(pos, n, +1);
  const Profile prof = profile_from_measure(mu);
  double rerr = 0.0;
  for (double s : linspace(0.05, 0.5, 10))
    rerr = std::max(rerr, std::abs(r_transform(mu, s) - r_from_profile(prof, s)));
  double serr = 0.0;
  for (double t : linspace(-0.6, -0.1, 10))
    serr = std::max(serr, std::abs(s_transform(nu, t) - s_from_profile(prof, t)));

  double wres = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x =
        std::exp(std::log(1e-12) + i * (std::log(1e3) - std::log(1e-12)) / 9999.0);
    const double w = lambert_w0(x);
    wres = std::max(wres, std::abs(w * std::exp(w) - x));
  }
  const double inv_e = std::exp(-1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = -inv_e + inv_e * i / 1000.0;
    const double w = lambert_w0(x);
    wres = std::max(wres, std::abs(w * std::exp(w) - x));
  }

  LogPoly xn{300, false, std::vector<double>(301, num::neg_inf)};
  xn.logc[300] = 0.0;
  const bool add_id = same_logc(boxplus_n(pa, xn, 300), pa) && same_logc(boxplus_n(xn, pa, 300), pa);
  const bool mul_id = same_logc(boxtimes_n(t_poly(300, 0, 0, 0), pr, 300), pr);

  r.pass = rerr <= 1e-3 && serr <= 1e-3 && wres <= 1e-12 && add_id && mul_id;
  r.detail = fmt2("dual-path R/S max err = %.3e/%.3e (tol 1e-3); ", rerr, serr) +
             fmt("Lambert residual %.3e (tol 1e-12); ", wres) +
             (add_id ? "additive identity bit-exact; " : "ADDITIVE IDENTITY BROKEN; ") +
             (mul_id ? "multiplicative left identity bit-exact" : "MULTIPLICATIVE IDENTITY BROKEN");
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, unsigned seed) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult out;
  try {
    switch (id) {
      case 1: out = crit1(seed); break;
      case 2: out = crit2(); break;
      case 3: out = crit3(); break;
      case 4: out = crit4(); break;
      case 5: out = crit5(); break;
      case 6: out = crit6(); break;
      case 7: out = crit7(); break;
      case 8: out = crit8(); break;
      case 9: out = crit9(); break;
      case 10: out = crit10(); break;
      case 11: out = crit11(); break;
      default: fail(errc::argument, "criterion id must be 1..11");
    }
  } catch (const error& e) {
    out.id = id;
    out.name = out.name.empty() ? "criterion-" + std::to_string(id) : out.name;
    out.pass = false;
    out.detail = std::string("aborted: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // criterion 1 carries its own runtime budget; criterion 11 covers the suites
  if (out.id == 1 && out.seconds >= 5.0) {
    out.pass = false;
    out.detail += fmt("; runtime %.2fs exceeds 5s budget", out.seconds);
  }
  if (out.id == 11 && out.seconds >= 300.0) {
    out.pass = false;
    out.detail += fmt("; runtime %.2fs exceeds 300s budget", out.seconds);
  }
  return out;
}

std::vector<CriterionResult> run_all(unsigned seed) {
  std::vector<CriterionResult> out;
  out.reserve(11);
  for (int id = 1; id <= 11; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace profilekit
