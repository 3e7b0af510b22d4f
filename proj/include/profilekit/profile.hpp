#pragma once

#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/logpoly.hpp"

namespace profilekit {

// sampled exponential profile g on a strictly increasing grid inside
// (m_lo, m_hi); exp_neg_gprime[i] holds e^{-g'(grid[i])} (exact for
// measure-built profiles, centered differences for empirical ones)
struct Profile {
  double m_lo = 0.0, m_hi = 0.0;
  std::vector<double> grid, g, exp_neg_gprime;
  double Mg = 0.0;
};

// discrete (or z-uniform) probability measure M on [0,1] with the tilting
// integrals Psi(t) = int log(1-y+yt) M(dy) and Phi(t) = t Psi'(t); Phi is a
// strictly increasing bijection from (0,inf) onto (M({1}), 1-M({0}))
class TiltingContext {
 public:
  // atoms in [0,1], positive weights summing to 1
  TiltingContext(std::vector<double> ys, std::vector<double> ws);
  // pushforward of the uniform law on [zlo, zhi], zhi <= 0, under z -> 1/(1-z)
  static TiltingContext from_z_uniform(double zlo, double zhi);

  double psi(double t) const;
  double phi(double t) const;
  // unique t > 0 with phi(t) = alpha; alpha outside the open range -> errc::range
  double phi_inverse(double alpha) const;

  double mass0() const { return m0_; }
  double mass1() const { return m1_; }

 private:
  TiltingContext() = default;
  bool uniform_ = false;
  double zlo_ = 0.0, zhi_ = 0.0;
  std::vector<double> ys_, ws_;  // atoms strictly inside (0,1)
  double m0_ = 0.0, m1_ = 0.0;
};

// grid = {k/cap : logc[k] finite}, g = (logc - log p(1))/cap; fewer than two
// finite coefficients -> errc::degenerate
Profile empirical_profile(const LogPoly& p);

// G(t) = alpha/t where e^{-g'(alpha)} = t, by bisection against the monotone
// interpolant of log exp_neg_gprime; t outside the sampled closed range ->
// extrapolation_error carrying the achievable (t_min, t_max)
double cauchy_from_profile(const Profile& prof, double t);

// tilting construction: M = pushforward of mu under z -> 1/(1-z), then
// g(alpha) = Psi(t) - alpha log t at t = Phi^{-1}(alpha) on a 512-point
// midpoint grid strictly inside (M({1}), 1-M({0}))
Profile profile_from_measure(const EmpiricalMeasure& mu);
Profile profile_from_measure(const MeasureSpec& mu);  // dirac_mixture / uniform only

TiltingContext tilting_from_measure(const EmpiricalMeasure& mu);
TiltingContext tilting_from_measure(const MeasureSpec& mu);

// unique theta > 0 with phi(theta) = k/n
double theta_star(const TiltingContext& ctx, long k, long n);

// componentwise theta p / (1 - p + p theta); fixes 0 and 1
std::vector<double> tilt(const std::vector<double>& probs, double theta);

// sup over samples of f(x) + x u; slopes must be nonincreasing within 1e-6
double legendre(const std::vector<double>& xs, const std::vector<double>& fs, double u);

}  // namespace profilekit
