#pragma once

#include <utility>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/profile.hpp"

namespace profilekit {

// sampled transform on a grid, tagged with what it is and where it lives
struct TransformSample {
  enum class Kind { G, R, S, psi, exp_gprime };
  Kind kind = Kind::G;
  std::vector<std::pair<double, double>> points;  // (argument, value), arguments increasing
  double domain_lo = 0.0, domain_hi = 0.0;
  bool open_lo = true, open_hi = true;
};

// coefficient-ratio samples (k/cap, c_{k+1}/c_k): the discrete surrogate for
// e^{g'}; needs at least two consecutive finite coefficients
TransformSample ratio_derivative(const LogPoly& p);

// Cauchy transform of a discrete root measure; t within 1e-12 (relative) of a
// finite atom -> errc::singularity; infinite atoms contribute 0
double cauchy(const EmpiricalMeasure& mu, double t);

// R(s) = s G^{-1}(s) - 1 for measures on [-inf, A]; s must be positive and
// below the achievable G range right of the support
double r_transform(const EmpiricalMeasure& mu, double s);
double r_transform(const MeasureSpec& mu, double s);

// psi(t) = G(1/t)/t - 1 for measures on [0, +inf], t < 0
double psi_transform(const EmpiricalMeasure& nu, double t);
double psi_transform(const MeasureSpec& nu, double t);

// S(t) = (t+1)/t psi^{-1}(t) on the open interval (nu({0})-1, -nu({+inf}));
// S(0) is filled by the left limit at -1e-8 (the right twin +1e-8 always lies
// outside the interval, which is contained in (-1, 0])
double s_transform(const EmpiricalMeasure& nu, double t);
double s_transform(const MeasureSpec& nu, double t);

// S via the profile: -(t+1)/t e^{g'(t+1)}; t+1 must lie in the sampled grid range
double s_from_profile(const Profile& prof, double t);

// R via the profile: the inverse of alpha -> alpha e^{g'(alpha)} (strictly
// decreasing) at t, minus 1; t outside the sampled range -> errc::range
double r_from_profile(const Profile& prof, double t);

// pointwise power S^p, the transform-level multiplicative self-convolution
TransformSample s_power(const TransformSample& s, double p);

}  // namespace profilekit
