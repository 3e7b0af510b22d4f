#include <doctest.h>

#include <cmath>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/errors.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/profile.hpp"
#include "profilekit/transforms.hpp"

using namespace profilekit;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("cauchy of discrete measures") {
  EmpiricalMeasure one = make_measure({-1.0}, 1, -1);
  CHECK(cauchy(one, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  EmpiricalMeasure two = make_measure({0.0, -2.0}, 2, -1);
  CHECK(cauchy(two, 2.0) == doctest::Approx(0.375).epsilon(1e-15));
  // escaped mass contributes nothing at finite points but shows in t G(t)
  EmpiricalMeasure half = make_measure({-1.0}, 2, -1);
  CHECK(cauchy(half, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(1e8 * cauchy(half, 1e8) - 0.5) <= 1e-6);
  try {
    cauchy(half, -1.0);
    FAIL("expected singularity");
  } catch (const error& e) {
    CHECK(e.kind() == errc::singularity);
  }
}

TEST_CASE("r transform of a point mass is linear") {
  EmpiricalMeasure m = make_measure({-1.0}, 1, -1);
  for (double s : {0.1, 0.5, 2.0}) {
    CHECK(r_transform(m, s) == doctest::Approx(-s).epsilon(1e-10));
  }
  CHECK_THROWS_AS(r_transform(m, 0.0), error);
  CHECK_THROWS_AS(r_transform(m, -1.0), error);
}

TEST_CASE("r transform near zero reads off the escaped mass") {
  EmpiricalMeasure m = make_measure({-1.0}, 2, -1);  // half the mass at -infinity
  CHECK(std::abs(r_transform(m, 1e-6) - (-0.5)) <= 1e-3);
  MeasureSpec u = uniform_measure(-2.0, -1.0);       // nothing escapes
  CHECK(std::abs(r_transform(u, 1e-6)) <= 1e-3);
}

TEST_CASE("r transform of the hyperbolic family has a closed form") {
  // G inverts to Y, so R(s) = s coth s - kappa - 1 on (0, z_kappa)
  MeasureSpec m = mu_kappa_measure(0.5);
  for (double s : {0.2, 0.7, 1.0, 1.4}) {
    CHECK(r_transform(m, s) ==
          doctest::Approx(s / std::tanh(s) - 0.5 - 1.0).epsilon(1e-9));
  }
  // beyond z_kappa the requested level exceeds the Cauchy range
  try {
    r_transform(m, 1.6);
    FAIL("expected range");
  } catch (const error& e) {
    CHECK(e.kind() == errc::range);
  }
}

TEST_CASE("r transform respects a bounded Cauchy range") {
  // ak > 1: no atom at the support top, so G stays bounded there
  MeasureSpec spec = nu_ab_measure(2.0, 2.0, 0.6);
  CHECK(std::abs(r_transform(spec, 1e-4) - std::exp(-1.2) * 1e-4) <= 1e-7);
  CHECK_THROWS_AS(r_transform(spec, 7.0), error);
}

TEST_CASE("psi transform values and limits") {
  EmpiricalMeasure d1 = make_measure({1.0}, 1, 1);
  CHECK(psi_transform(d1, -1.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(psi_transform(d1, -1e-6)) <= 1e-3);            // -> 0 at the origin
  CHECK(std::abs(psi_transform(d1, -1e6) - (-1.0)) <= 1e-3);    // -> nu({0}) - 1
  CHECK_THROWS_AS(psi_transform(d1, 0.5), error);

  MeasureSpec b = bernoulli01_measure(0.3);
  CHECK(psi_transform(b, -1.0) == doctest::Approx(0.3 + 0.35 - 1.0).epsilon(1e-14));
  MeasureSpec u = uniform_measure(1.0, 2.0);
  CHECK(psi_transform(u, -1.0) == doctest::Approx(std::log(1.5) - 1.0).epsilon(1e-12));
  // the discrete and spec paths agree
  CHECK(psi_transform(make_measure({1.0}, 1, 1), -2.0) ==
        doctest::Approx(psi_transform(dirac_mixture({1.0}, {1.0}), -2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(psi_transform(mu_kappa_measure(0.3), -1.0), error);  // lives on both signs
}

TEST_CASE("s transform of point masses is constant") {
  EmpiricalMeasure d1 = make_measure({1.0}, 1, 1);
  for (double t : {-0.9, -0.5, -0.1}) {
    CHECK(s_transform(d1, t) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(std::abs(s_transform(d1, 0.0) - 1.0) <= 1e-6);  // left-limit fill-in
  EmpiricalMeasure d2 = make_measure({2.0}, 1, 1);
  CHECK(s_transform(d2, -0.5) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("s transform of the two-point law matches its closed form") {
  // 3 zeros and 7 ones: the discrete stand-in for the kappa = 0.3 two-point law
  std::vector<double> atoms(10, 1.0);
  atoms[0] = atoms[1] = atoms[2] = 0.0;
  EmpiricalMeasure disc = make_measure(atoms, 10, 1);
  MeasureSpec b = bernoulli01_measure(0.3);
  for (double t : {-0.65, -0.5, -0.2, -0.05}) {
    const double closed = nu_ab_s_transform(0.0, 1.0, 0.3, t);
    CHECK(std::abs(s_transform(disc, t) - closed) <= 1e-6);
    CHECK(std::abs(s_transform(b, t) - closed) <= 1e-6);
    CHECK(closed == doctest::Approx((t + 1.0) / (t + 0.7)).epsilon(1e-12));
  }
  CHECK(std::abs(s_transform(b, 0.0) - 1.0 / 0.7) <= 1e-6);
  try {
    s_transform(b, -0.75);  // below the atom floor
    FAIL("expected range");
  } catch (const error& e) {
    CHECK(e.kind() == errc::range);
  }
  CHECK_THROWS_AS(s_transform(b, 0.1), error);
}

TEST_CASE("escaped mass closes the s domain at zero") {
  EmpiricalMeasure m = make_measure({1.0}, 2, 1);  // half the mass at +infinity
  CHECK(s_transform(m, -0.7) == doctest::Approx(2.0 / 7.0).epsilon(1e-9));
  CHECK_THROWS_AS(s_transform(m, 0.0), error);     // interval now ends at -1/2
  CHECK_THROWS_AS(s_transform(m, -0.4), error);
}

TEST_CASE("s transform rejects unusable measures") {
  CHECK_THROWS_AS(s_transform(make_measure({-1.0}, 1, -1), -0.5), error);  // negative support
  CHECK_THROWS_AS(s_transform(make_measure({0.0}, 2, 1), -0.5), error);    // only 0 and infinity
}

TEST_CASE("profile route reproduces the s transform of the binomial") {
  Profile prof = profile_from_measure(dirac_mixture({-1.0}, {1.0}));
  for (double t : {-0.9, -0.5, -0.1}) {
    CHECK(std::abs(s_from_profile(prof, t) - 1.0) <= 1e-6);
  }
  CHECK_THROWS_AS(s_from_profile(prof, 0.0), error);
  CHECK_THROWS_AS(s_from_profile(prof, 0.5), error);  // t+1 beyond the grid
}

TEST_CASE("profile route matches the two-point closed form") {
  Profile prof = profile_from_measure(make_measure({0.0, -1.0}, 2, -1));
  for (double t : {-0.45, -0.3, -0.1}) {
    CHECK(std::abs(s_from_profile(prof, t) - nu_ab_s_transform(0.0, 1.0, 0.5, t)) <= 1e-4);
  }
}

TEST_CASE("empirical and profile s transforms agree on a dense root polynomial") {
  // the profile path discretizes at the coefficient scale, so the two routes
  // differ by O(1/n); measured sup at n = 1000 over these t is 1.25e-3
  const int n = 1000;
  std::vector<double> zs = linspace(-2.0, -1.0, n);
  Profile prof = empirical_profile(from_roots(zs, n));
  std::vector<double> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = -zs[i];
  EmpiricalMeasure nu = make_measure(pos, n, 1);
  for (double t : {-0.6, -0.4, -0.2}) {
    CHECK(std::abs(s_from_profile(prof, t) - s_transform(nu, t)) <= 2e-3);
  }
}

TEST_CASE("r from profile inverts the point-mass profile") {
  Profile prof = profile_from_measure(dirac_mixture({-1.0}, {1.0}));
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(r_from_profile(prof, s) + s) <= 1e-6);
  }
  CHECK_THROWS_AS(r_from_profile(prof, 1.5), error);  // above the sampled range
  CHECK_THROWS_AS(r_from_profile(prof, 0.0), error);
}

TEST_CASE("r from profile agrees with the direct inversion for the uniform law") {
  MeasureSpec spec = uniform_measure(-2.0, -1.0);
  Profile prof = profile_from_measure(spec);
  for (double s : {0.1, 0.3, 0.6}) {
    CHECK(std::abs(r_from_profile(prof, s) - r_transform(spec, s)) <= 1e-3);
  }
}

TEST_CASE("r from profile sees the escaped mass near zero") {
  Profile prof = profile_from_measure(make_measure({-1.0}, 2, -1));
  CHECK(std::abs(r_from_profile(prof, 1e-3) - (-0.5)) <= 1e-2);
}

TEST_CASE("ratio derivative of the binomial") {
  TransformSample rd = ratio_derivative(from_roots(std::vector<double>(5, -1.0), 5));
  REQUIRE(rd.points.size() == 5);
  CHECK(rd.kind == TransformSample::Kind::exp_gprime);
  for (int k = 0; k < 5; ++k) {
    CHECK(rd.points[k].first == doctest::Approx(k / 5.0).epsilon(1e-15));
    CHECK(rd.points[k].second == doctest::Approx((5.0 - k) / (k + 1.0)).epsilon(1e-12));
  }
  CHECK(rd.domain_lo == 0.0);
  CHECK(rd.domain_hi == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_FALSE(rd.open_lo);
  CHECK_FALSE(rd.open_hi);
  CHECK_THROWS_AS(ratio_derivative(from_roots({0.0, 0.0}, 2)), error);  // lone coefficient
}

TEST_CASE("s_power raises samples pointwise") {
  TransformSample ts;
  ts.kind = TransformSample::Kind::S;
  ts.points = {{-0.5, 2.0}, {-0.4, 3.0}};
  TransformSample sq = s_power(ts, 2.0);
  CHECK(sq.points[0].second == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(sq.points[1].second == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(sq.points[0].first == -0.5);
  CHECK_THROWS_AS(s_power(ts, 0.5), error);
  TransformSample bad = ts;
  bad.points[0].second = -1.0;
  CHECK_THROWS_AS(s_power(bad, 2.0), error);
}
