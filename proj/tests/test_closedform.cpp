#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/errors.hpp"

using namespace profilekit;

namespace {

constexpr double kPi = 3.14159265358979323846;

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 48);
}

// mass of nu_{a,a;kappa} strictly above x, from the boundary values of the
// log-potential antiderivative of the Cauchy transform:
//   U(t) = log t + W0(c/t) + (1 - ak) log(ak + W0(c/t)),  U' = G,
// so Im U(x + i0) / pi counts the mass to the right of x
double nu_aa_tail(double a, double kappa, double x) {
  const double ak = a * kappa;
  const double c = -ak * std::exp(-ak);
  const std::complex<double> w = lambert_w0_above(c / x);
  return (w.imag() + (1.0 - ak) * std::arg(std::complex<double>(ak, 0.0) + w)) / kPi;
}

}  // namespace

TEST_CASE("real Lambert branch pins down the classic values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  // Omega constant: W(1)
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-14));
}

TEST_CASE("real Lambert residual stays tiny across the working range") {
  for (int i = 0; i <= 10000; ++i) {
    const double lx = -12.0 + 15.0 * i / 10000.0;  // x from 1e-12 to 1e3
    const double x = std::pow(10.0, lx);
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * (1.0 + std::abs(x)));
  }
  const double lo = -std::exp(-1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = lo * (1.0 - static_cast<double>(i) / 1000.0);
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * (1.0 + std::abs(x)));
  }
  try {
    lambert_w0(-0.5);
    FAIL("expected domain");
  } catch (const error& e) {
    CHECK(e.kind() == errc::domain);
  }
}

TEST_CASE("Lambert boundary values above the cut") {
  // W0(-1 + i0)
  const std::complex<double> w = lambert_w0_above(-1.0);
  CHECK(w.real() == doctest::Approx(-0.31813150520476413).epsilon(1e-9));
  CHECK(w.imag() == doctest::Approx(1.3372357014306895).epsilon(1e-9));
  // continuity with the real branch at the branch point
  const std::complex<double> wb = lambert_w0_above(-std::exp(-1.0) - 1e-9);
  CHECK(std::abs(wb - std::complex<double>(-1.0, 0.0)) <= 1e-3);
  // residual and the half-plane constraint across many magnitudes
  for (double y : {-0.37, -0.4, -1.0, -3.0, -10.0, -1e3, -1e6, -1e12}) {
    const std::complex<double> wv = lambert_w0_above(y);
    CHECK(wv.imag() > 0.0);
    CHECK(wv.imag() < kPi);
    CHECK(std::abs(wv * std::exp(wv) - y) <= 1e-12 * (1.0 + std::abs(y)));
  }
  CHECK_THROWS_AS(lambert_w0_above(-0.3), error);
  CHECK_THROWS_AS(lambert_w0_above(0.5), error);
}

TEST_CASE("nu_aa transform behaves like a probability measure at infinity") {
  const std::complex<double> g = nu_aa_cauchy(1.0, 0.5, {1e8, 0.0});
  CHECK(g.imag() == 0.0);
  CHECK(std::abs(1e8 * g.real() - 1.0) <= 1e-6);
  // first moment from the expansion t(tG - 1) -> mean = e^{-ak}
  CHECK(1e8 * (1e8 * g.real() - 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
  // negative arguments give negative values
  const std::complex<double> gn = nu_aa_cauchy(1.0, 0.5, {-1.0, 0.0});
  CHECK(gn.real() < 0.0);
}

TEST_CASE("nu_aa support endpoint and the singular segment") {
  CHECK(nu_aa_support_hi(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double edge = nu_aa_support_hi(1.0, 0.5);
  CHECK(edge == doctest::Approx(0.5 * std::exp(0.5)).epsilon(1e-15));
  for (double t : {0.0, 0.5 * edge, edge}) {
    try {
      nu_aa_cauchy(1.0, 0.5, {t, 0.0});
      FAIL("expected singularity");
    } catch (const error& e) {
      CHECK(e.kind() == errc::singularity);
    }
  }
  // ak > 1 removes the atom at one, so t = 1 is a regular point
  CHECK(nu_aa_support_hi(2.0, 0.6) < 1.0);
  const std::complex<double> g1 = nu_aa_cauchy(2.0, 0.6, {1.0, 0.0});
  CHECK(std::isfinite(g1.real()));
  CHECK(g1.real() > 0.0);
}

TEST_CASE("nu_aa density matches the Stieltjes inversion of its transform") {
  const double edge = nu_aa_support_hi(1.0, 0.5);
  for (double frac : {0.2, 0.5, 0.8}) {
    const double x = frac * edge;
    const double direct = nu_aa_density(1.0, 0.5, x);
    const double inverted = -nu_aa_cauchy(1.0, 0.5, {x, 1e-6}).imag() / kPi;
    CHECK(std::abs(direct - inverted) <= 1e-4);
  }
  for (int i = 1; i <= 1000; ++i) {
    CHECK(nu_aa_density(1.0, 0.5, edge * i / 1001.0) >= 0.0);
  }
  CHECK_THROWS_AS(nu_aa_density(1.0, 0.5, -0.1), error);
  CHECK_THROWS_AS(nu_aa_density(1.0, 0.5, edge + 0.1), error);
}

TEST_CASE("nu_aa potential boundary values recover the known masses") {
  // total mass from far below the support, atom mass from just inside the edge
  for (auto [a, kappa] : std::vector<std::pair<double, double>>{{1.0, 0.5}, {2.0, 0.3}, {1.5, 1.0}}) {
    const double edge = nu_aa_support_hi(a, kappa);
    // the tail closes at rate a*kappa / log(1/x): even x = 1e-300 leaves ~2e-3
    CHECK(std::abs(nu_aa_tail(a, kappa, 1e-300) - 1.0) <= 5e-3);
    CHECK(std::abs(nu_aa_tail(a, kappa, edge * (1.0 - 1e-10)) - nu_aa_atom_at_one(a, kappa)) <= 1e-6);
  }
  CHECK(nu_aa_atom_at_one(1.0, 0.5) == 0.5);
  CHECK(nu_aa_atom_at_one(2.0, 0.6) == 0.0);
}

TEST_CASE("nu_aa density integrates to the continuous mass") {
  // the density has a slowly decaying 1/(x log^2 x) tail at zero, so the last
  // sliver next to each endpoint is taken from the exact potential instead of
  // quadrature
  for (auto [a, kappa] : std::vector<std::pair<double, double>>{{1.0, 0.5}, {2.0, 0.3}, {1.5, 1.0}}) {
    const double ak = a * kappa;
    const double edge = nu_aa_support_hi(a, kappa);
    const double delta = 1e-6 * edge;
    const double interior = integrate(
        [&](double x) { return nu_aa_density(a, kappa, x); }, delta, edge - delta, 1e-8);
    const double strip_low = 1.0 - nu_aa_tail(a, kappa, delta);
    const double strip_high = nu_aa_tail(a, kappa, edge - delta) - nu_aa_atom_at_one(a, kappa);
    CHECK(std::abs(strip_low + interior + strip_high - std::min(ak, 1.0)) <= 1e-4);
  }
}

TEST_CASE("nu_ab S-transform closed forms and continuity in a - b") {
  // a=0, b=1 reduces to the two-point law: S(t) = (t+1)/(t+1-kappa)
  for (double u : {0.4, 0.6, 0.9}) {
    CHECK(nu_ab_s_transform(0.0, 1.0, 0.3, u - 1.0) ==
          doctest::Approx(u / (u - 0.3)).epsilon(1e-12));
  }
  // a=2, b=1: positive exponent branch
  CHECK(nu_ab_s_transform(2.0, 1.0, 0.2, -0.5) == doctest::Approx(1.4).epsilon(1e-12));
  // the a = b formula is the limit of both power branches
  const double base = nu_ab_s_transform(1.0, 1.0, 0.4, -0.5);
  CHECK(base == doctest::Approx(std::exp(0.4 / 0.5)).epsilon(1e-13));
  CHECK(std::abs(nu_ab_s_transform(1.0 + 1e-6, 1.0, 0.4, -0.5) - base) <= 1e-4);
  CHECK(std::abs(nu_ab_s_transform(1.0 - 1e-6, 1.0, 0.4, -0.5) - base) <= 1e-4);
  // admissible interval is open on both ends
  try {
    nu_ab_s_transform(0.0, 1.0, 0.3, -0.8);  // t+1 = 0.2 below the atom mass
    FAIL("expected range");
  } catch (const error& e) {
    CHECK(e.kind() == errc::range);
  }
  CHECK_THROWS_AS(nu_ab_s_transform(0.0, 1.0, 0.3, 0.0), error);
  CHECK_THROWS_AS(nu_ab_s_transform(0.0, 1.0, 1.5, -0.5), error);  // 1 + (a-b)k <= 0
}

TEST_CASE("nu_ab atom at zero") {
  CHECK(nu_ab_atom_at_zero(0.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(nu_ab_atom_at_zero(1.0, 1.0, 0.5) == 0.0);
  CHECK(nu_ab_atom_at_zero(2.0, 1.0, 0.3) == 0.0);
  CHECK_THROWS_AS(nu_ab_atom_at_zero(0.0, 1.0, 2.0), error);
}

TEST_CASE("y_kappa is odd and series-stable near zero") {
  for (double t : {1e-5, 1e-4, 0.5, 2.0}) {
    CHECK(y_kappa(0.3, -t) == -y_kappa(0.3, t));
  }
  // the small-argument series matches the direct formula at the same point
  const double t0 = 0.999e-3;  // inside the series branch
  const double direct = 1.0 / std::tanh(t0) - 0.3 / t0;
  CHECK(std::abs(y_kappa(0.3, t0) - direct) <= 1e-9);
  CHECK_THROWS_AS(y_kappa(0.3, 0.0), error);
  CHECK_THROWS_AS(y_kappa(1.5, 1.0), error);
}

TEST_CASE("z_kappa solves its defining equation") {
  const double z = z_kappa(0.25);
  CHECK(z == doctest::Approx(2.1773).epsilon(2e-4));
  CHECK(std::abs(std::sinh(z) - 2.0 * z) <= 1e-10);
  // spectrum endpoint approaches +-1 as kappa -> 0
  const double tiny = 1e-4;
  CHECK(std::abs(y_kappa(tiny, z_kappa(tiny)) - 1.0) <= 5e-2);
}

TEST_CASE("mu_kappa transform limits and oddness") {
  // nearly all mass at the origin when kappa is tiny: G(z) ~ arccoth(z)
  CHECK(std::abs(mu_kappa_cauchy(1e-4, 2.0) - 0.5 * std::log(3.0)) <= 1e-3);
  // z G(z) -> finite mass 1 - kappa
  CHECK(std::abs(1e6 * mu_kappa_cauchy(0.5, 1e6) - 0.5) <= 1e-4);
  CHECK(mu_kappa_cauchy(0.5, -2.0) == -mu_kappa_cauchy(0.5, 2.0));
  const double edge = y_kappa(0.5, z_kappa(0.5));
  for (double z : {0.0, 0.5 * edge, edge, -0.9 * edge}) {
    try {
      mu_kappa_cauchy(0.5, z);
      FAIL("expected singularity");
    } catch (const error& e) {
      CHECK(e.kind() == errc::singularity);
    }
  }
}

TEST_CASE("Stirling profile building blocks") {
  const double w = w_s(0.5);
  CHECK(std::abs(w / std::expm1(w) - 0.5) <= 1e-12);
  CHECK(w == doctest::Approx(1.2564).epsilon(2e-4));
  CHECK(stirling_profile(0.5) == doctest::Approx(0.29573).epsilon(2e-4));
  // limits: 0 at alpha -> 1, -1 at alpha -> 0
  CHECK(std::abs(stirling_profile(1.0 - 1e-9)) <= 1e-6);
  CHECK(std::abs(stirling_profile(1e-9) + 1.0) <= 1e-6);
  CHECK_THROWS_AS(w_s(0.0), error);
  CHECK_THROWS_AS(w_s(1.0), error);
  CHECK_THROWS_AS(stirling_profile(0.0), error);
}

TEST_CASE("measure factories validate their parameters") {
  CHECK_THROWS_AS(dirac_mixture({-1.0}, {0.5}), error);            // weights must sum to 1
  CHECK_THROWS_AS(dirac_mixture({-1.0, -2.0}, {1.0}), error);      // mismatched sizes
  CHECK_THROWS_AS(dirac_mixture({-1.0, -2.0}, {1.5, -0.5}), error);
  CHECK_THROWS_AS(uniform_measure(2.0, 1.0), error);
  CHECK_THROWS_AS(nu_ab_measure(0.0, 1.0, 2.0), error);
  CHECK_THROWS_AS(mu_kappa_measure(1.5), error);
  CHECK_THROWS_AS(bernoulli01_measure(0.0), error);
}

TEST_CASE("cauchy dispatch reproduces each family") {
  MeasureSpec d = dirac_mixture({-1.0}, {1.0});
  CHECK(cauchy(d, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(cauchy(d, -1.0), error);

  MeasureSpec u = uniform_measure(-2.0, -1.0);
  CHECK(cauchy(u, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(cauchy(u, -1.5), error);

  MeasureSpec naa = nu_ab_measure(1.0, 1.0, 0.5);
  CHECK(cauchy(naa, 2.0) ==
        doctest::Approx(nu_aa_cauchy(1.0, 0.5, {2.0, 0.0}).real()).epsilon(1e-14));
  MeasureSpec nab = nu_ab_measure(0.0, 1.0, 0.5);
  CHECK_THROWS_AS(cauchy(nab, 2.0), error);  // no closed real form off the diagonal

  MeasureSpec mk = mu_kappa_measure(0.3);
  CHECK(cauchy(mk, 2.0) == doctest::Approx(mu_kappa_cauchy(0.3, 2.0)).epsilon(1e-14));

  MeasureSpec b = bernoulli01_measure(0.3);
  CHECK(cauchy(b, 2.0) == doctest::Approx(0.3 / 2.0 + 0.7 / 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(cauchy(b, 1.0), error);
}

TEST_CASE("finite mass accounts for escape to infinity") {
  CHECK(finite_mass(mu_kappa_measure(0.3)) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(finite_mass(bernoulli01_measure(0.3)) == 1.0);
  CHECK(finite_mass(uniform_measure(0.0, 1.0)) == 1.0);
  CHECK(finite_mass(dirac_mixture({0.0, 1.0}, {0.25, 0.75})) == doctest::Approx(1.0).epsilon(1e-15));
}
