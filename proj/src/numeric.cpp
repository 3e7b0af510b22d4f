#include "profilekit/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "profilekit/errors.hpp"

namespace profilekit::num {

double logsumexp_sorted(std::vector<double> terms) {
  std::erase(terms, neg_inf);
  if (terms.empty()) return neg_inf;
  std::sort(terms.begin(), terms.end());
  double m = terms.back();
  if (terms.size() == 1) return m;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) s += std::exp(terms[i] - m);
  return m + std::log1p(s);
}

double logsumexp(const std::vector<double>& terms) {
  double m = neg_inf;
  for (double t : terms) m = std::max(m, t);
  if (m == neg_inf) return neg_inf;
  double s = 0.0;
  for (double t : terms)
    if (t != m && t != neg_inf) s += std::exp(t - m);
  return m + std::log1p(s);
}

double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binom(long n, long k) {
  if (k < 0 || k > n) return neg_inf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2) fail(errc::argument, "pchip needs >= 2 matching samples");
  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    if (h[i] <= 0) fail(errc::argument, "pchip abscissae must increase");
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = s[0];
  d_[n - 1] = s[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d_[i] = 0.0;  // local extremum keeps the interpolant shape-preserving
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
  // clamp endpoint slopes (Fritsch-Carlson) so no overshoot at the ends
  auto clamp_end = [](double& d, double s0) {
    if (s0 == 0.0) d = 0.0;
    else if (d * s0 < 0.0) d = 0.0;
    else if (std::abs(d) > 3.0 * std::abs(s0)) d = 3.0 * s0;
  };
  clamp_end(d_[0], s[0]);
  clamp_end(d_[n - 1], s[n - 2]);
}

double Pchip::operator()(double q) const {
  const std::size_t n = x_.size();
  if (q <= x_[0]) return y_[0] + d_[0] * (q - x_[0]);
  if (q >= x_[n - 1]) return y_[n - 1] + d_[n - 1] * (q - x_[n - 1]);
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), q) - x_.begin() - 1;
  if (i >= n - 1) i = n - 2;
  double h = x_[i + 1] - x_[i];
  double t = (q - x_[i]) / h;
  double a = y_[i], b = y_[i + 1];
  double m0 = d_[i] * h, m1 = d_[i + 1] * h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * b +
         (t3 - t2) * m1;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

int thread_cap() {
  static int cap = [] {
    if (const char* env = std::getenv("PROFILEKIT_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int cap = thread_cap();
  if (cap <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t nt = std::min<std::size_t>(cap, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace profilekit::num

namespace profilekit {

const char* errc_name(errc k) noexcept {
  switch (k) {
    case errc::argument: return "argument error";
    case errc::domain: return "domain error";
    case errc::degree: return "degree error";
    case errc::divisibility: return "divisibility error";
    case errc::zero_poly: return "zero polynomial";
    case errc::degenerate: return "degenerate input";
    case errc::range: return "range error";
    case errc::extrapolation: return "extrapolation error";
    case errc::singularity: return "singularity";
    case errc::shape: return "shape error";
    case errc::ladder: return "ladder diagnostic";
    case errc::consistency: return "consistency error";
    case errc::io: return "io error";
  }
  return "error";
}

}  // namespace profilekit
