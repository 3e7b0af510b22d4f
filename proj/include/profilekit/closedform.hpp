#pragma once

#include <complex>
#include <vector>

namespace profilekit {

// principal Lambert branch on [-1/e, inf): w with w e^w = x,
// |w e^w - x| <= 1e-13 (1+|x|); below -1/e -> errc::domain
double lambert_w0(double x);

// boundary value W0(y + i0) for y < -1/e; Im in (0, pi)
std::complex<double> lambert_w0_above(double y);

// Cauchy transform of the measure with density p_{a,a;kappa} on
// [0, a k e^{1-a k}] plus an atom max(1-a k, 0) at 1; t on the closed
// support segment -> errc::singularity
std::complex<double> nu_aa_cauchy(double a, double kappa, std::complex<double> t);

// density at x strictly inside (0, a k e^{1-a k}); outside -> errc::domain
double nu_aa_density(double a, double kappa, double x);

double nu_aa_support_hi(double a, double kappa);  // a k e^{1-a k}
double nu_aa_atom_at_one(double a, double kappa); // max(1 - a k, 0)

// S-transform of nu_{a,b;kappa}; t+1 must lie in (max(0,-(a-b)k), 1) open
double nu_ab_s_transform(double a, double b, double kappa, double t);

double nu_ab_atom_at_zero(double a, double b, double kappa);  // max(0, -(a-b)k)

// Y_k(t) = coth t - k/t (odd, series-stabilized near 0); t = 0 -> errc::domain
double y_kappa(double kappa, double t);

// unique positive solution of sinh z = z / sqrt(k), k in (0,1)
double z_kappa(double kappa);

// G = Y_k^{-1} on the (0, z_k) branch, odd reflection for z < 0;
// |z| <= Y_k(z_k) -> errc::singularity.  z G(z) -> 1 - kappa at infinity
// (the finite part; the remaining kappa sits at infinity).
double mu_kappa_cauchy(double kappa, double z);

// unique positive root of w / (e^w - 1) = alpha
double w_s(double alpha);

// g_S(alpha) = -1 + alpha + (1-alpha) log alpha + w_S + (alpha-1) log w_S
double stirling_profile(double alpha);

// closed-form measure families with known Cauchy transforms
struct MeasureSpec {
  enum class Kind { dirac_mixture, uniform, nu_ab_kappa, mu_kappa, bernoulli01 };
  Kind kind = Kind::dirac_mixture;
  std::vector<double> atoms, weights;  // dirac_mixture
  double lo = 0.0, hi = 0.0;           // uniform
  double a = 0.0, b = 0.0;             // nu_ab_kappa
  double kappa = 0.0;                  // nu_ab_kappa / mu_kappa / bernoulli01
};

MeasureSpec dirac_mixture(std::vector<double> atoms, std::vector<double> weights);
MeasureSpec uniform_measure(double lo, double hi);
MeasureSpec nu_ab_measure(double a, double b, double kappa);
MeasureSpec mu_kappa_measure(double kappa);
MeasureSpec bernoulli01_measure(double kappa);

// mass at finite points (mu_kappa keeps kappa at infinity)
double finite_mass(const MeasureSpec& m);

// real-axis Cauchy transform; evaluation on or too close to the support -> error
double cauchy(const MeasureSpec& m, double t);

}  // namespace profilekit
