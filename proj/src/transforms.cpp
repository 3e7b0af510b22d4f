#include "profilekit/transforms.hpp"

#include <cmath>
#include <limits>

#include "profilekit/errors.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

namespace {

// endpoint masses of a measure on [0, +inf] given as an empirical measure
struct ZeroInfMass {
  double at_zero = 0.0, at_inf = 0.0;
};

ZeroInfMass check_on_nonneg(const EmpiricalMeasure& nu, const char* who) {
  if (nu.cap < 1) fail(errc::argument, std::string(who) + ": empty measure");
  if (nu.infinity_mass > 0.0 && nu.infinity_sign != 1)
    fail(errc::domain, std::string(who) + ": measure must be supported on [0, +inf]");
  ZeroInfMass m;
  m.at_inf = nu.infinity_mass;
  for (double a : nu.atoms) {
    if (!(a >= 0.0) || !std::isfinite(a))
      fail(errc::domain, std::string(who) + ": atoms must be nonnegative");
    if (a == 0.0) m.at_zero += nu.weight();
  }
  if (m.at_zero + m.at_inf >= 1.0 - 1e-12)
    fail(errc::degenerate, std::string(who) + ": all mass at 0 and +inf");
  return m;
}

ZeroInfMass check_on_nonneg(const MeasureSpec& nu, const char* who) {
  ZeroInfMass m;
  switch (nu.kind) {
    case MeasureSpec::Kind::dirac_mixture:
      for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        if (!(nu.atoms[i] >= 0.0)) fail(errc::domain, std::string(who) + ": atoms must be nonnegative");
        if (nu.atoms[i] == 0.0) m.at_zero += nu.weights[i];
      }
      break;
    case MeasureSpec::Kind::uniform:
      if (!(nu.lo >= 0.0)) fail(errc::domain, std::string(who) + ": support must lie in [0, +inf]");
      break;
    case MeasureSpec::Kind::nu_ab_kappa:
      if (nu.a != nu.b)
        fail(errc::domain, std::string(who) + ": no closed Cauchy form for a != b; use nu_ab_s_transform");
      m.at_zero = nu_ab_atom_at_zero(nu.a, nu.b, nu.kappa);
      break;
    case MeasureSpec::Kind::bernoulli01:
      m.at_zero = nu.kappa;
      break;
    case MeasureSpec::Kind::mu_kappa:
      fail(errc::domain, std::string(who) + ": measure is not supported on [0, +inf]");
  }
  if (m.at_zero + m.at_inf >= 1.0 - 1e-12)
    fail(errc::degenerate, std::string(who) + ": all mass at 0 and +inf");
  return m;
}

double psi_value(const EmpiricalMeasure& nu, double t) {
  // G(1/t)/t - 1 written as sum w/(1 - t y) - 1, stable for any t < 0
  double s = 0.0;
  for (double a : nu.atoms) s += nu.weight() / (1.0 - t * a);
  return s - 1.0;
}

double psi_value(const MeasureSpec& nu, double t) {
  switch (nu.kind) {
    case MeasureSpec::Kind::dirac_mixture: {
      double s = 0.0;
      for (std::size_t i = 0; i < nu.atoms.size(); ++i) s += nu.weights[i] / (1.0 - t * nu.atoms[i]);
      return s - 1.0;
    }
    case MeasureSpec::Kind::uniform:
      return std::log((1.0 - t * nu.lo) / (1.0 - t * nu.hi)) / (t * (nu.hi - nu.lo)) - 1.0;
    case MeasureSpec::Kind::nu_ab_kappa: {
      const std::complex<double> g = nu_aa_cauchy(nu.a, nu.kappa, {1.0 / t, 0.0});
      return g.real() / t - 1.0;
    }
    case MeasureSpec::Kind::bernoulli01:
      return nu.kappa + (1.0 - nu.kappa) / (1.0 - t) - 1.0;
    default:
      fail(errc::domain, "psi_transform: unsupported measure kind");
  }
}

template <class Measure>
double psi_impl(const Measure& nu, double t, const char* who) {
  if (!(t < 0.0)) fail(errc::domain, std::string(who) + ": t must be negative");
  check_on_nonneg(nu, who);
  return psi_value(nu, t);
}

template <class Measure>
double s_impl(const Measure& nu, double t, const char* who) {
  const ZeroInfMass m = check_on_nonneg(nu, who);
  const double lo = m.at_zero - 1.0, hi = -m.at_inf;
  if (t == 0.0) {
    // removable singularity: the +1e-8 twin of the stated average always sits
    // outside (lo, hi] subset of (-1, 0], so the left limit stands in
    if (hi == 0.0) return s_impl(nu, -1e-8, who);
    fail(errc::range, std::string(who) + ": t outside the psi range");
  }
  if (!(t > lo && t < hi)) fail(errc::range, std::string(who) + ": t outside the psi range");
  double a = -1.0, b = -1.0;
  int guard = 0;
  while (psi_value(nu, a) > t) {
    a *= 2.0;
    if (++guard > 1100) fail(errc::consistency, std::string(who) + ": psi bracket ran away low");
  }
  guard = 0;
  while (psi_value(nu, b) < t) {
    b *= 0.5;
    if (++guard > 1100) fail(errc::consistency, std::string(who) + ": psi bracket ran away high");
  }
  const double inv = num::bisect([&](double s) { return psi_value(nu, s) - t; }, a, b);
  return (t + 1.0) / t * inv;
}

double support_max(const MeasureSpec& mu) {
  switch (mu.kind) {
    case MeasureSpec::Kind::dirac_mixture: {
      double m = -std::numeric_limits<double>::infinity();
      for (double a : mu.atoms) m = std::max(m, a);
      return m;
    }
    case MeasureSpec::Kind::uniform:
      return mu.hi;
    case MeasureSpec::Kind::nu_ab_kappa: {
      if (mu.a != mu.b)
        fail(errc::domain, "r_transform: no closed Cauchy form for a != b");
      const double edge = nu_aa_support_hi(mu.a, mu.kappa);
      return nu_aa_atom_at_one(mu.a, mu.kappa) > 0.0 ? std::max(edge, 1.0) : edge;
    }
    case MeasureSpec::Kind::mu_kappa:
      return y_kappa(mu.kappa, z_kappa(mu.kappa));
    case MeasureSpec::Kind::bernoulli01:
      return 1.0;
  }
  fail(errc::argument, "r_transform: unknown measure kind");
}

template <class Eval>
double r_impl(double support_hi, const Eval& G, double s, const char* who) {
  if (!(s > 0.0)) fail(errc::domain, std::string(who) + ": s must be positive");
  const double lo = support_hi + 1e-11 * (1.0 + std::abs(support_hi));
  if (!(G(lo) > s))
    fail(errc::range, std::string(who) + ": s at or above the Cauchy range right of the support");
  double w = 1.0;
  while (G(support_hi + w) > s) {
    w *= 2.0;
    if (w > 1e300) fail(errc::consistency, std::string(who) + ": G bracket ran away");
  }
  const double inv = num::bisect([&](double t) { return G(t) - s; }, lo, support_hi + w);
  return s * inv - 1.0;
}

}  // namespace

TransformSample ratio_derivative(const LogPoly& p) {
  TransformSample out;
  out.kind = TransformSample::Kind::exp_gprime;
  for (int k = 0; k + 1 < static_cast<int>(p.logc.size()); ++k) {
    if (!num::finite(p.logc[k]) || !num::finite(p.logc[k + 1])) continue;
    out.points.emplace_back(static_cast<double>(k) / p.cap, std::exp(p.logc[k + 1] - p.logc[k]));
  }
  if (out.points.empty())
    fail(errc::argument, "ratio_derivative: needs two consecutive finite coefficients");
  out.domain_lo = out.points.front().first;
  out.domain_hi = out.points.back().first;
  out.open_lo = out.open_hi = false;
  return out;
}

double cauchy(const EmpiricalMeasure& mu, double t) {
  if (mu.cap < 1) fail(errc::argument, "cauchy: empty measure");
  double s = 0.0;
  for (double a : mu.atoms) {
    if (!std::isfinite(a)) continue;
    const double d = t - a;
    if (std::abs(d) <= 1e-12 * (1.0 + std::abs(a)))
      fail(errc::singularity, "cauchy: t coincides with an atom");
    s += mu.weight() / d;
  }
  return s;
}

double r_transform(const EmpiricalMeasure& mu, double s) {
  if (mu.cap < 1) fail(errc::argument, "r_transform: empty measure");
  if (mu.infinity_mass > 0.0 && mu.infinity_sign != -1)
    fail(errc::domain, "r_transform: measure must be supported on [-inf, A]");
  if (mu.atoms.empty()) fail(errc::degenerate, "r_transform: no finite mass");
  double hi = -std::numeric_limits<double>::infinity();
  for (double a : mu.atoms) {
    if (!std::isfinite(a)) fail(errc::argument, "r_transform: finite atoms expected in atoms[]");
    hi = std::max(hi, a);
  }
  return r_impl(hi, [&](double t) { return cauchy(mu, t); }, s, "r_transform");
}

double r_transform(const MeasureSpec& mu, double s) {
  const double hi = support_max(mu);
  return r_impl(hi, [&](double t) { return cauchy(mu, t); }, s, "r_transform");
}

double psi_transform(const EmpiricalMeasure& nu, double t) { return psi_impl(nu, t, "psi_transform"); }
double psi_transform(const MeasureSpec& nu, double t) { return psi_impl(nu, t, "psi_transform"); }

double s_transform(const EmpiricalMeasure& nu, double t) { return s_impl(nu, t, "s_transform"); }
double s_transform(const MeasureSpec& nu, double t) { return s_impl(nu, t, "s_transform"); }

double s_from_profile(const Profile& prof, double t) {
  const std::size_t m = prof.grid.size();
  if (m < 2 || prof.exp_neg_gprime.size() != m)
    fail(errc::degenerate, "s_from_profile: profile has no usable derivative samples");
  if (t == 0.0) fail(errc::range, "s_from_profile: t = 0 is outside the domain");
  const double x = t + 1.0;
  if (!(x >= prof.grid.front() && x <= prof.grid.back()))
    fail(errc::range, "s_from_profile: t+1 outside the sampled grid range");
  std::vector<double> lt(m);
  for (std::size_t i = 0; i < m; ++i) lt[i] = std::log(prof.exp_neg_gprime[i]);
  const num::Pchip interp(prof.grid, lt);
  return -(x / t) * std::exp(-interp(x));
}

double r_from_profile(const Profile& prof, double t) {
  const std::size_t m = prof.grid.size();
  if (m < 2 || prof.exp_neg_gprime.size() != m)
    fail(errc::degenerate, "r_from_profile: profile has no usable derivative samples");
  if (!(t > 0.0)) fail(errc::range, "r_from_profile: t must be positive");
  std::vector<double> lt(m);
  for (std::size_t i = 0; i < m; ++i) lt[i] = std::log(prof.exp_neg_gprime[i]);
  const num::Pchip interp(prof.grid, lt);
  // h(alpha) = alpha e^{g'} is strictly decreasing; work with log h
  const double lh_front = std::log(prof.grid.front()) - lt.front();
  const double lh_back = std::log(prof.grid.back()) - lt.back();
  const double lv = std::log(t);
  if (lv > lh_front || lv < lh_back)
    fail(errc::range, "r_from_profile: t outside the sampled range of alpha e^{g'}");
  if (lv == lh_front) return prof.grid.front() - 1.0;
  if (lv == lh_back) return prof.grid.back() - 1.0;
  const double alpha = num::bisect(
      [&](double a) { return std::log(a) - interp(a) - lv; }, prof.grid.front(), prof.grid.back());
  return alpha - 1.0;
}

TransformSample s_power(const TransformSample& s, double p) {
  if (!(p >= 1.0)) fail(errc::argument, "s_power: exponent must be >= 1");
  TransformSample out = s;
  for (auto& pt : out.points) {
    if (!(pt.second > 0.0)) fail(errc::domain, "s_power: samples must be positive");
    pt.second = std::pow(pt.second, p);
  }
  return out;
}

}  // namespace profilekit
