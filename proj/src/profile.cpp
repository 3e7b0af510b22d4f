#include "profilekit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "profilekit/errors.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

namespace {

constexpr int kGrid = 512;

// stable log(1 - y + y t) for y in [0,1], t > 0
double log_mix(double y, double t) {
  const double u = y * (t - 1.0);
  if (std::abs(u) < 0.5) return std::log1p(u);
  return std::log(1.0 - y + y * t);
}

Profile profile_from_context(const TiltingContext& ctx) {
  Profile prof;
  prof.m_lo = ctx.mass1();
  prof.m_hi = 1.0 - ctx.mass0();
  const double span = prof.m_hi - prof.m_lo;
  prof.grid.resize(kGrid);
  prof.g.resize(kGrid);
  prof.exp_neg_gprime.resize(kGrid);
  num::parallel_for(kGrid, [&](std::size_t i) {
    const double alpha = prof.m_lo + (i + 0.5) * span / kGrid;
    const double t = ctx.phi_inverse(alpha);
    prof.grid[i] = alpha;
    prof.g[i] = ctx.psi(t) - alpha * std::log(t);
    prof.exp_neg_gprime[i] = t;  // exact: g'(alpha) = -log Phi^{-1}(alpha)
  });
  prof.Mg = *std::max_element(prof.g.begin(), prof.g.end());
  return prof;
}

}  // namespace

TiltingContext::TiltingContext(std::vector<double> ys, std::vector<double> ws) {
  if (ys.empty() || ys.size() != ws.size())
    fail(errc::argument, "TiltingContext: atoms and weights must be matched and nonempty");
  double s = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] >= 0.0 && ys[i] <= 1.0)) fail(errc::argument, "TiltingContext: atoms must lie in [0,1]");
    if (!(ws[i] > 0.0)) fail(errc::argument, "TiltingContext: weights must be positive");
    s += ws[i];
  }
  if (std::abs(s - 1.0) > 1e-9) fail(errc::argument, "TiltingContext: weights must sum to 1");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] == 0.0) m0_ += ws[i];
    else if (ys[i] == 1.0) m1_ += ws[i];
    else { ys_.push_back(ys[i]); ws_.push_back(ws[i]); }
  }
  if (m0_ + m1_ >= 1.0 - 1e-12 && ys_.empty())
    fail(errc::degenerate, "TiltingContext: all mass at the endpoints");
}

TiltingContext TiltingContext::from_z_uniform(double zlo, double zhi) {
  if (!(zlo < zhi) || !(zhi <= 0.0) || !std::isfinite(zlo))
    fail(errc::argument, "TiltingContext: uniform support needs finite zlo < zhi <= 0");
  TiltingContext ctx;
  ctx.uniform_ = true;
  ctx.zlo_ = zlo;
  ctx.zhi_ = zhi;
  return ctx;
}

double TiltingContext::psi(double t) const {
  if (!(t > 0.0)) fail(errc::domain, "TiltingContext::psi: t must be positive");
  if (uniform_) {
    // (1/(zhi-zlo)) int log((t-z)/(1-z)) dz, antiderivative in closed form
    auto J = [&](double u) {
      return (u - zlo_) * std::log(u - zlo_) - (u - zhi_) * std::log(u - zhi_);
    };
    return (J(t) - J(1.0)) / (zhi_ - zlo_);
  }
  double s = m1_ * std::log(t);
  for (std::size_t i = 0; i < ys_.size(); ++i) s += ws_[i] * log_mix(ys_[i], t);
  return s;
}

double TiltingContext::phi(double t) const {
  if (!(t > 0.0)) fail(errc::domain, "TiltingContext::phi: t must be positive");
  if (uniform_) {
    return m1_ + t * std::log((t - zlo_) / (t - zhi_)) / (zhi_ - zlo_);
  }
  double s = m1_;
  for (std::size_t i = 0; i < ys_.size(); ++i) {
    const double y = ys_[i];
    s += ws_[i] * y * t / (1.0 - y + y * t);
  }
  return s;
}

double TiltingContext::phi_inverse(double alpha) const {
  const double lo_end = m1_, hi_end = 1.0 - m0_;
  if (!(alpha > lo_end && alpha < hi_end))
    fail(errc::range, "TiltingContext: alpha outside the open range of Phi");
  double slo = 0.0, shi = 0.0;
  while (phi(std::exp(slo)) > alpha) {
    slo -= 0.693147180559945;
    if (slo < -800.0) fail(errc::consistency, "TiltingContext: Phi bracket ran away low");
  }
  while (phi(std::exp(shi)) < alpha) {
    shi += 0.693147180559945;
    if (shi > 800.0) fail(errc::consistency, "TiltingContext: Phi bracket ran away high");
  }
  const double s = num::bisect([&](double u) { return phi(std::exp(u)) - alpha; }, slo, shi);
  return std::exp(s);
}

Profile empirical_profile(const LogPoly& p) {
  std::vector<int> idx;
  for (int k = 0; k < static_cast<int>(p.logc.size()); ++k)
    if (num::finite(p.logc[k])) idx.push_back(k);
  if (idx.size() < 2)
    fail(errc::degenerate, "empirical_profile: degenerate interval, single finite coefficient");
  const double norm = evaluate_log(p, 1.0);
  Profile prof;
  prof.m_lo = static_cast<double>(idx.front()) / p.cap;
  prof.m_hi = static_cast<double>(idx.back()) / p.cap;
  prof.grid.reserve(idx.size());
  prof.g.reserve(idx.size());
  for (int k : idx) {
    prof.grid.push_back(static_cast<double>(k) / p.cap);
    prof.g.push_back((p.logc[k] - norm) / p.cap);
  }
  // centered-difference g' (one-sided at the ends), stored as e^{-g'}
  const std::size_t m = prof.grid.size();
  prof.exp_neg_gprime.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == m ? i : i + 1;
    const double d = (prof.g[b] - prof.g[a]) / (prof.grid[b] - prof.grid[a]);
    prof.exp_neg_gprime[i] = std::exp(-d);
  }
  prof.Mg = *std::max_element(prof.g.begin(), prof.g.end());
  return prof;
}

double cauchy_from_profile(const Profile& prof, double t) {
  if (!(t > 0.0)) fail(errc::domain, "cauchy_from_profile: t must be positive");
  const std::size_t m = prof.grid.size();
  if (m < 2 || prof.exp_neg_gprime.size() != m)
    fail(errc::degenerate, "cauchy_from_profile: profile has no usable derivative samples");
  // e^{-g'} = t(alpha) is strictly increasing; invert its log against log t
  std::vector<double> lt(m);
  for (std::size_t i = 0; i < m; ++i) lt[i] = std::log(prof.exp_neg_gprime[i]);
  const double t_min = prof.exp_neg_gprime.front(), t_max = prof.exp_neg_gprime.back();
  const double lv = std::log(t);
  if (lv < lt.front() || lv > lt.back())
    throw extrapolation_error(t_min, t_max,
                              "cauchy_from_profile: t outside the sampled derivative range");
  // exact boundary hits would break the bisection bracket; answer directly
  if (lv == lt.front()) return prof.grid.front() / t;
  if (lv == lt.back()) return prof.grid.back() / t;
  const num::Pchip interp(prof.grid, lt);
  const double alpha =
      num::bisect([&](double a) { return interp(a) - lv; }, prof.grid.front(), prof.grid.back());
  return alpha / t;
}

TiltingContext tilting_from_measure(const EmpiricalMeasure& mu) {
  if (mu.cap < 1) fail(errc::argument, "tilting_from_measure: empty measure");
  if (mu.infinity_mass > 0.0 && mu.infinity_sign != -1)
    fail(errc::domain, "tilting_from_measure: measure must be supported on [-inf, 0]");
  std::vector<double> ys, ws;
  const double w = mu.weight();
  for (double z : mu.atoms) {
    if (!(z <= 0.0)) fail(errc::domain, "tilting_from_measure: atoms must be nonpositive");
    ys.push_back(1.0 / (1.0 - z));
    ws.push_back(w);
  }
  if (mu.infinity_mass > 0.0) {
    ys.push_back(0.0);
    ws.push_back(mu.infinity_mass);
  }
  return TiltingContext(std::move(ys), std::move(ws));
}

TiltingContext tilting_from_measure(const MeasureSpec& mu) {
  switch (mu.kind) {
    case MeasureSpec::Kind::dirac_mixture: {
      std::vector<double> ys;
      for (double z : mu.atoms) {
        if (!(z <= 0.0)) fail(errc::domain, "tilting_from_measure: atoms must be nonpositive");
        ys.push_back(1.0 / (1.0 - z));
      }
      return TiltingContext(std::move(ys), mu.weights);
    }
    case MeasureSpec::Kind::uniform:
      if (!(mu.hi <= 0.0)) fail(errc::domain, "tilting_from_measure: support must lie in [-inf, 0]");
      return TiltingContext::from_z_uniform(mu.lo, mu.hi);
    default:
      fail(errc::domain, "tilting_from_measure: only dirac_mixture and uniform specs have tilting forms");
  }
}

Profile profile_from_measure(const EmpiricalMeasure& mu) {
  return profile_from_context(tilting_from_measure(mu));
}

Profile profile_from_measure(const MeasureSpec& mu) {
  return profile_from_context(tilting_from_measure(mu));
}

double theta_star(const TiltingContext& ctx, long k, long n) {
  if (n < 1 || k < 0 || k > n) fail(errc::argument, "theta_star: need 0 <= k <= n, n >= 1");
  return ctx.phi_inverse(static_cast<double>(k) / static_cast<double>(n));
}

std::vector<double> tilt(const std::vector<double>& probs, double theta) {
  if (!(theta > 0.0)) fail(errc::domain, "tilt: theta must be positive");
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) fail(errc::argument, "tilt: probabilities must lie in [0,1]");
    out.push_back(theta * p / (1.0 - p + p * theta));
  }
  return out;
}

double legendre(const std::vector<double>& xs, const std::vector<double>& fs, double u) {
  if (xs.size() < 2 || xs.size() != fs.size())
    fail(errc::argument, "legendre: need matched samples, at least two");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) fail(errc::argument, "legendre: abscissae must increase strictly");
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double slope = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - 1]);
    if (slope > prev + 1e-6) fail(errc::shape, "legendre: samples are not concave");
    prev = slope;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) best = std::max(best, fs[i] + xs[i] * u);
  return best;
}

}  // namespace profilekit
