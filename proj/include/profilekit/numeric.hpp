#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace profilekit::num {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double pos_inf = std::numeric_limits<double>::infinity();

inline bool finite(double x) { return std::isfinite(x); }

// log(e^a + e^b), tolerant of -inf
inline double log_add(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b) for a >= b; collapses to -inf once the difference is below
// the relative resolution of the subtraction
inline double log_sub(double a, double b) {
  if (b == neg_inf) return a;
  double d = a - b;
  if (d <= 1e-12) return neg_inf;
  return a + std::log1p(-std::exp(-d));
}

// max-shifted sum; terms accumulated ascending for reproducibility
double logsumexp_sorted(std::vector<double> terms);

// plain max-shifted sum in given order (single-term input returns it bit-exact)
double logsumexp(const std::vector<double>& terms);

double log_factorial(long n);
double log_binom(long n, long k);

// shape-preserving monotone cubic interpolant (Fritsch-Carlson slopes)
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double q) const;
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

 private:
  std::vector<double> x_, y_, d_;
};

// bisection for continuous f with f(lo), f(hi) of opposite sign (or one zero);
// runs to double exhaustion, returns midpoint
double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200);

// thread cap from PROFILEKIT_THREADS (>=1), default hardware concurrency
int thread_cap();

// index-parallel loop with deterministic per-index outputs; falls back to
// serial when the cap is 1 or n is small
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace profilekit::num
