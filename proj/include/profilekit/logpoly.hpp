#pragma once

#include <vector>

#include "profilekit/numeric.hpp"

namespace profilekit {

// Degree-capped polynomial with nonnegative coefficients held as natural logs.
// logc[k] = log of the x^k coefficient, -inf for a zero coefficient.
// reflected = true means the object carries Q(z) with nonnegative roots via
// P(x) = (-1)^cap Q(-x); the stored coefficients are those of P and are still
// nonnegative, so sign bookkeeping reduces to the flag.
// Invariants: at least one finite entry; finite entries occupy a contiguous
// index range; the finite entries form a concave sequence (Newton).
struct LogPoly {
  int cap = 0;
  bool reflected = false;
  std::vector<double> logc;  // size cap + 1

  int deg() const;  // highest finite index
  int low() const;  // lowest finite index (number of zero roots)
};

// Finite atoms of equal weight 1/cap plus explicit mass at a signed infinity.
struct EmpiricalMeasure {
  std::vector<double> atoms;  // sorted ascending, multiplicities repeated
  int cap = 0;
  double infinity_mass = 0.0;
  int infinity_sign = -1;

  double weight() const { return 1.0 / cap; }
};

// prod_k (x - root_k) for nonpositive roots, built by iterated length-2
// log-domain convolution (all partials positive, no cancellation)
LogPoly from_roots(const std::vector<double>& roots, int cap);

// same storage reinterpreted as the carrier of a nonnegative-rooted Q
LogPoly as_reflected(LogPoly p);

// log P(x) for x > 0
double evaluate_log(const LogPoly& p, double x);

struct SignEval {
  int sign;       // -1, 0, +1
  double logabs;  // log |P(x)|, -inf when sign == 0
};

// signed evaluation anywhere: positive and negative term groups accumulated
// separately in log space; sign 0 iff the groups cancel below relative 1e-14
SignEval evaluate_signed(const LogPoly& p, double x);

// all deg(p) roots, nonpositive, sorted ascending, multiplicities repeated.
// ladder initialization + coefficient-space refinement; the returned
// configuration is certified by the residual of its rebuilt coefficients
std::vector<double> roots(const LogPoly& p);

// b-fold derivative; cap drops by b
LogPoly derivative(const LogPoly& p, int b);

// monomial action of scale_n^-b * z^a (d/dz)^b; cap shifts by a - b
LogPoly apply_Aab(const LogPoly& p, int a, int b, int scale_n);

// root atoms (negated back when reflected) plus mass (cap - deg)/cap at the
// signed infinity
EmpiricalMeasure empirical_measure(const LogPoly& p);

// construction helper for measures given directly by atoms
EmpiricalMeasure make_measure(std::vector<double> atoms, int cap, int infinity_sign);

}  // namespace profilekit
