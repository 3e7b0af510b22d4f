#include <doctest.h>

#include <cmath>
#include <vector>

#include "profilekit/errors.hpp"
#include "profilekit/logpoly.hpp"

using namespace profilekit;

TEST_CASE("from_roots builds (x+1)^2 coefficients") {
  LogPoly p = from_roots({-1.0, -1.0}, 2);
  REQUIRE(p.cap == 2);
  REQUIRE(p.logc.size() == 3);
  CHECK(p.logc[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.logc[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(p.logc[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.deg() == 2);
  CHECK(p.low() == 0);
  CHECK_FALSE(p.reflected);
}

TEST_CASE("from_roots pads to cap with -inf above the degree") {
  LogPoly p = from_roots({-1.0, -1.0}, 5);
  CHECK(p.cap == 5);
  CHECK(p.deg() == 2);
  CHECK(p.logc[3] == num::neg_inf);
  CHECK(p.logc[4] == num::neg_inf);
  CHECK(p.logc[5] == num::neg_inf);
}

TEST_CASE("zero roots shift the lowest finite index") {
  LogPoly p = from_roots({0.0, 0.0, -1.0}, 3);
  CHECK(p.low() == 2);
  CHECK(p.deg() == 3);
  CHECK(p.logc[0] == num::neg_inf);
  CHECK(p.logc[1] == num::neg_inf);
  CHECK(p.logc[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.logc[3] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("from_roots rejects positive roots and bad caps") {
  CHECK_THROWS_AS(from_roots({1.0}, 1), error);
  CHECK_THROWS_AS(from_roots({-1.0, -2.0}, 1), error);  // more roots than cap
  LogPoly one = from_roots({}, 0);                      // empty product is the constant 1
  CHECK(one.logc == std::vector<double>{0.0});
}

TEST_CASE("as_reflected flips the flag only") {
  LogPoly p = from_roots({-1.0, -2.0}, 2);
  LogPoly q = as_reflected(p);
  CHECK(q.reflected);
  CHECK(q.logc == p.logc);
  CHECK(q.cap == p.cap);
}

TEST_CASE("evaluate_log on positive arguments") {
  LogPoly p = from_roots({-1.0, -1.0}, 2);
  CHECK(evaluate_log(p, 1.0) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(evaluate_log(p, 3.0) == doctest::Approx(std::log(16.0)).epsilon(1e-14));
}

TEST_CASE("evaluate_signed handles either sign and exact zeros") {
  LogPoly p = from_roots({-1.0, -1.0}, 2);
  SignEval at_minus3 = evaluate_signed(p, -3.0);  // (-3+1)^2 = 4
  CHECK(at_minus3.sign == 1);
  CHECK(at_minus3.logabs == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  SignEval at_root = evaluate_signed(p, -1.0);
  CHECK(at_root.sign == 0);
  CHECK(at_root.logabs == num::neg_inf);

  LogPoly cubic = from_roots({-1.0, -2.0, -3.0}, 3);
  SignEval mid = evaluate_signed(cubic, -1.5);  // (-0.5)(0.5)(1.5) = -0.375
  CHECK(mid.sign == -1);
  CHECK(mid.logabs == doctest::Approx(std::log(0.375)).epsilon(1e-10));
}

TEST_CASE("derivative of (x+1)^3 is 3(x+1)^2") {
  LogPoly p = from_roots({-1.0, -1.0, -1.0}, 3);
  LogPoly d = derivative(p, 1);
  REQUIRE(d.cap == 2);
  CHECK(d.logc[0] == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(d.logc[1] == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(d.logc[2] == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(derivative(p, 4), error);  // differentiates to nothing
}

TEST_CASE("apply_Aab with a=0,b=1 is the derivative scaled by 1/n") {
  LogPoly p = from_roots({-1.0, -2.0, -3.0, -4.0}, 4);
  LogPoly viaA = apply_Aab(p, 0, 1, 4);
  LogPoly d = derivative(p, 1);
  REQUIRE(viaA.cap == d.cap);
  for (int j = 0; j <= viaA.cap; ++j) {
    if (d.logc[j] == num::neg_inf) CHECK(viaA.logc[j] == num::neg_inf);
    else CHECK(viaA.logc[j] == doctest::Approx(d.logc[j] - std::log(4.0)).epsilon(1e-14));
  }
}

TEST_CASE("apply_Aab with a=1,b=1 preserves cap and kills only the constant") {
  LogPoly p = from_roots({-1.0, -1.0}, 2);
  LogPoly q = apply_Aab(p, 1, 1, 2);
  CHECK(q.cap == 2);
  // z d/dz (x+1)^2 / 2 = z(x+1) = z^2 + z
  CHECK(q.logc[0] == num::neg_inf);
  CHECK(q.logc[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(q.logc[2] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("empirical_measure splits atoms and infinity mass") {
  LogPoly p = from_roots({-1.0, -1.0}, 4);
  EmpiricalMeasure m = empirical_measure(p);
  CHECK(m.cap == 4);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(m.atoms[1] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(m.infinity_mass == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.infinity_sign == -1);
  CHECK(m.weight() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("empirical_measure negates atoms for reflected polynomials") {
  LogPoly p = as_reflected(from_roots({-1.0, -2.0}, 2));
  EmpiricalMeasure m = empirical_measure(p);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.atoms[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(m.infinity_sign == 1);
  CHECK(m.infinity_mass == 0.0);
}

TEST_CASE("make_measure validates its arguments") {
  EmpiricalMeasure m = make_measure({-2.0, -1.0}, 4, -1);
  CHECK(m.infinity_mass == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_measure({-1.0, -2.0, -3.0}, 2, -1), error);  // too many atoms
  CHECK_THROWS_AS(make_measure({-1.0}, 1, 0), error);               // bad sign
  CHECK_THROWS_AS(make_measure({}, 0, -1), error);                  // empty cap
}
