#include "profilekit/closedform.hpp"

#include <cmath>
#include <limits>

#include "profilekit/errors.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

namespace {

const double kInvE = std::exp(-1.0);
const double kPi = 3.14159265358979323846;
const double kE = 2.718281828459045235;

// 3-term branch-point expansion in p = sqrt(2 (e x + 1))
template <class T>
T branch_series(T p) {
  return T(-1.0) + p * (T(1.0) + p * (T(-1.0 / 3.0) + p * T(11.0 / 72.0)));
}

// value of w e^w on the upper edge of the cut, parameterized by v = Im w;
// strictly decreasing from -1/e (v -> 0) to -inf (v -> pi)
double cut_value(double v) {
  const double u = -v / std::tan(v);
  return std::exp(u) * (u * std::cos(v) - v * std::sin(v));
}

std::complex<double> complex_w0(std::complex<double> z);

std::complex<double> halley_w(std::complex<double> w, std::complex<double> z, int iters) {
  for (int it = 0; it < iters; ++it) {
    const std::complex<double> ew = std::exp(w);
    const std::complex<double> f = w * ew - z;
    if (std::abs(f) <= 1e-14 * (1.0 + std::abs(z))) break;
    const std::complex<double> wp1 = w + 1.0;
    const std::complex<double> denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
    const std::complex<double> step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

std::complex<double> complex_w0(std::complex<double> z) {
  if (z.imag() < 0.0) return std::conj(complex_w0(std::conj(z)));
  if (z.imag() == 0.0 && z.real() >= -kInvE)
    return {lambert_w0(z.real()), 0.0};
  std::complex<double> w;
  const std::complex<double> ez1 = kE * z + 1.0;
  if (std::abs(ez1) < 0.25) {
    w = branch_series(std::sqrt(2.0 * ez1));
  } else if (z.real() < -kInvE && z.imag() <= 0.5) {
    // just off the cut: start from the nearby upper-edge value
    w = lambert_w0_above(std::min(z.real(), -0.5));
  } else if (std::abs(z) > 3.0) {
    const std::complex<double> l1 = std::log(z);
    w = l1 - std::log(l1);
  } else {
    w = std::log(1.0 + z);
  }
  w = halley_w(w, z, 100);
  if (std::abs(w * std::exp(w) - z) > 1e-9 * (1.0 + std::abs(z)))
    fail(errc::consistency, "complex Lambert iteration did not converge");
  return w;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) fail(errc::domain, "lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  double p2 = 2.0 * (kE * x + 1.0);
  if (p2 < 0.0) p2 = 0.0;  // x == -1/e up to rounding
  if (p2 < 1e-6) return branch_series(std::sqrt(p2));
  double w;
  if (x < -0.25) {
    w = branch_series(std::sqrt(p2));
  } else if (x < kE) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    w = l1 - std::log(l1);
  }
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-14 * (1.0 + std::abs(x))) break;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

std::complex<double> lambert_w0_above(double y) {
  if (!(y < -kInvE)) fail(errc::domain, "lambert_w0_above: argument must lie strictly below -1/e");
  double lo = 1e-9, hi = kPi - 1e-9;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cut_value(mid) > y) lo = mid;
    else hi = mid;
  }
  const double v = 0.5 * (lo + hi);
  std::complex<double> w(-v / std::tan(v), v);
  w = halley_w(w, {y, 0.0}, 8);
  if (w.imag() <= 0.0) w = {w.real(), std::numeric_limits<double>::min()};
  return w;
}

std::complex<double> nu_aa_cauchy(double a, double kappa, std::complex<double> t) {
  if (!(a > 0.0) || !(kappa > 0.0))
    fail(errc::domain, "nu_aa_cauchy: a and kappa must be positive");
  const double ak = a * kappa;
  const double edge = ak * std::exp(1.0 - ak);
  const double c = -ak * std::exp(-ak);
  if (t.imag() == 0.0) {
    const double tr = t.real();
    if (std::isnan(tr) || (tr >= 0.0 && tr <= edge))
      fail(errc::singularity, "nu_aa_cauchy: t lies on the support segment");
    double arg = c / tr;
    if (tr > edge && arg < -kInvE) arg = -kInvE;  // rounding guard at the edge
    const double w = lambert_w0(arg);
    return {1.0 / (tr * (1.0 + w / ak)), 0.0};
  }
  const std::complex<double> w = complex_w0(c / t);
  return 1.0 / (t * (1.0 + w / ak));
}

double nu_aa_support_hi(double a, double kappa) {
  if (!(a > 0.0) || !(kappa > 0.0))
    fail(errc::domain, "nu_aa_support_hi: a and kappa must be positive");
  const double ak = a * kappa;
  return ak * std::exp(1.0 - ak);
}

double nu_aa_atom_at_one(double a, double kappa) {
  if (!(a > 0.0) || !(kappa > 0.0))
    fail(errc::domain, "nu_aa_atom_at_one: a and kappa must be positive");
  return std::max(1.0 - a * kappa, 0.0);
}

double nu_aa_density(double a, double kappa, double x) {
  if (!(a > 0.0) || !(kappa > 0.0))
    fail(errc::domain, "nu_aa_density: a and kappa must be positive");
  const double ak = a * kappa;
  const double edge = ak * std::exp(1.0 - ak);
  if (!(x > 0.0 && x < edge)) fail(errc::domain, "nu_aa_density: x outside the open support");
  double arg = -ak * std::exp(-ak) / x;
  if (arg >= -kInvE)  // only reachable by rounding right at the edge
    arg = std::nextafter(-kInvE, -std::numeric_limits<double>::infinity());
  const std::complex<double> w = lambert_w0_above(arg);
  return -std::imag(1.0 / (1.0 + w / ak)) / (kPi * x);
}

double nu_ab_s_transform(double a, double b, double kappa, double t) {
  if (!(kappa > 0.0)) fail(errc::domain, "nu_ab_s_transform: kappa must be positive");
  const double delta = a - b;
  if (!(1.0 + delta * kappa > 0.0))
    fail(errc::domain, "nu_ab_s_transform: requires 1 + (a-b) kappa > 0");
  const double u = t + 1.0;
  const double lo = std::max(0.0, -delta * kappa);
  if (!(u > lo && u < 1.0))
    fail(errc::range, "nu_ab_s_transform: t+1 outside the admissible interval");
  if (delta > 0.0) return std::pow(1.0 + delta * kappa / u, b / delta);
  if (delta < 0.0) return std::pow(u / (u + delta * kappa), b / (-delta));
  return std::exp(b * kappa / u);
}

double nu_ab_atom_at_zero(double a, double b, double kappa) {
  if (!(kappa > 0.0)) fail(errc::domain, "nu_ab_atom_at_zero: kappa must be positive");
  if (!(1.0 + (a - b) * kappa > 0.0))
    fail(errc::domain, "nu_ab_atom_at_zero: requires 1 + (a-b) kappa > 0");
  return std::max(0.0, -(a - b) * kappa);
}

double y_kappa(double kappa, double t) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(errc::domain, "y_kappa: kappa must lie in (0,1)");
  if (t == 0.0 || std::isnan(t)) fail(errc::domain, "y_kappa: t must be nonzero");
  if (std::abs(t) < 1e-3)  // coth t = 1/t + t/3 - t^3/45 + O(t^5)
    return (1.0 - kappa) / t + t / 3.0 - t * t * t / 45.0;
  return 1.0 / std::tanh(t) - kappa / t;
}

double z_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(errc::domain, "z_kappa: kappa must lie in (0,1)");
  const double rk = std::sqrt(kappa);
  const double hi = 2.0 * std::log(2.0 / rk) + 10.0;
  // f(0)=0 is a root too; start just right of it where f < 0
  return num::bisect([&](double z) { return std::sinh(z) - z / rk; }, 1e-12, hi);
}

double mu_kappa_cauchy(double kappa, double z) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(errc::domain, "mu_kappa_cauchy: kappa must lie in (0,1)");
  if (std::isnan(z)) fail(errc::domain, "mu_kappa_cauchy: z must be a number");
  const double zk = z_kappa(kappa);
  const double edge = y_kappa(kappa, zk);
  if (!(std::abs(z) > edge))
    fail(errc::singularity, "mu_kappa_cauchy: z inside the support");
  if (z < 0.0) return -mu_kappa_cauchy(kappa, -z);
  // Y is strictly decreasing from +inf to the edge on (0, z_k)
  return num::bisect([&](double t) { return z - y_kappa(kappa, t); }, 1e-300, zk);
}

double w_s(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(errc::domain, "w_s: alpha must lie in (0,1)");
  auto f = [&](double w) { return w / std::expm1(w) - alpha; };
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  return num::bisect(f, 1e-12, hi);
}

double stirling_profile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(errc::domain, "stirling_profile: alpha must lie in (0,1)");
  const double w = w_s(alpha);
  return -1.0 + alpha + (1.0 - alpha) * std::log(alpha) + w + (alpha - 1.0) * std::log(w);
}

MeasureSpec dirac_mixture(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size())
    fail(errc::argument, "dirac_mixture: atoms and weights must be matched and nonempty");
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) fail(errc::argument, "dirac_mixture: atoms must be finite");
    if (!(weights[i] > 0.0)) fail(errc::argument, "dirac_mixture: weights must be positive");
    s += weights[i];
  }
  if (std::abs(s - 1.0) > 1e-12) fail(errc::argument, "dirac_mixture: weights must sum to 1");
  MeasureSpec m;
  m.kind = MeasureSpec::Kind::dirac_mixture;
  m.atoms = std::move(atoms);
  m.weights = std::move(weights);
  return m;
}

MeasureSpec uniform_measure(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(errc::argument, "uniform_measure: requires finite lo < hi");
  MeasureSpec m;
  m.kind = MeasureSpec::Kind::uniform;
  m.lo = lo;
  m.hi = hi;
  return m;
}

MeasureSpec nu_ab_measure(double a, double b, double kappa) {
  if (!(kappa > 0.0)) fail(errc::argument, "nu_ab_measure: kappa must be positive");
  if (!(1.0 + (a - b) * kappa > 0.0))
    fail(errc::argument, "nu_ab_measure: requires 1 + (a-b) kappa > 0");
  MeasureSpec m;
  m.kind = MeasureSpec::Kind::nu_ab_kappa;
  m.a = a;
  m.b = b;
  m.kappa = kappa;
  return m;
}

MeasureSpec mu_kappa_measure(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(errc::argument, "mu_kappa_measure: kappa must lie in (0,1)");
  MeasureSpec m;
  m.kind = MeasureSpec::Kind::mu_kappa;
  m.kappa = kappa;
  return m;
}

MeasureSpec bernoulli01_measure(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    fail(errc::argument, "bernoulli01_measure: kappa must lie in (0,1)");
  MeasureSpec m;
  m.kind = MeasureSpec::Kind::bernoulli01;
  m.kappa = kappa;
  return m;
}

double finite_mass(const MeasureSpec& m) {
  switch (m.kind) {
    case MeasureSpec::Kind::dirac_mixture: {
      double s = 0.0;
      for (double w : m.weights) s += w;
      return s;
    }
    case MeasureSpec::Kind::mu_kappa:
      return 1.0 - m.kappa;  // kappa escapes to infinity
    default:
      return 1.0;
  }
}

double cauchy(const MeasureSpec& m, double t) {
  switch (m.kind) {
    case MeasureSpec::Kind::dirac_mixture: {
      double s = 0.0;
      for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        const double d = t - m.atoms[i];
        if (std::abs(d) <= 1e-12 * (1.0 + std::abs(m.atoms[i])))
          fail(errc::singularity, "cauchy: t coincides with an atom");
        s += m.weights[i] / d;
      }
      return s;
    }
    case MeasureSpec::Kind::uniform: {
      if (t >= m.lo && t <= m.hi) fail(errc::singularity, "cauchy: t inside the support");
      return std::log((t - m.lo) / (t - m.hi)) / (m.hi - m.lo);
    }
    case MeasureSpec::Kind::nu_ab_kappa: {
      if (m.a != m.b)
        fail(errc::domain, "cauchy: no closed form for nu_ab with a != b; use the S-transform");
      return nu_aa_cauchy(m.a, m.kappa, {t, 0.0}).real();
    }
    case MeasureSpec::Kind::mu_kappa:
      return mu_kappa_cauchy(m.kappa, t);
    case MeasureSpec::Kind::bernoulli01: {
      if (std::abs(t) <= 1e-12 || std::abs(t - 1.0) <= 1e-12)
        fail(errc::singularity, "cauchy: t coincides with an atom");
      return m.kappa / t + (1.0 - m.kappa) / (t - 1.0);
    }
  }
  fail(errc::argument, "cauchy: unknown measure kind");
}

}  // namespace profilekit
