#include "profilekit/exactpoly.hpp"

#include <cmath>

#include "profilekit/errors.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

namespace {

constexpr int kMaxDeg = 12;
constexpr int kMaxN = 8;

mpz_class fact(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

void trim(ExactPoly& p) {
  while (p.c.size() > 1 && p.c.back() == 0) p.c.pop_back();
}

void check_small(const ExactPoly& p, const char* who) {
  if (p.c.empty()) fail(errc::argument, std::string(who) + ": empty polynomial");
  if (p.deg() > kMaxDeg) fail(errc::argument, std::string(who) + ": degree above the exact-arithmetic cap");
}

}  // namespace

ExactPoly exact_from_roots(const std::vector<long>& roots) {
  if (static_cast<int>(roots.size()) > kMaxDeg)
    fail(errc::argument, "exact_from_roots: too many roots for the exact-arithmetic cap");
  ExactPoly p;
  p.c = {mpq_class(1)};
  for (long r : roots) {
    std::vector<mpq_class> next(p.c.size() + 1, mpq_class(0));
    for (std::size_t k = 0; k < p.c.size(); ++k) {
      next[k + 1] += p.c[k];
      next[k] -= mpq_class(r) * p.c[k];
    }
    p.c = std::move(next);
  }
  return p;
}

ExactPoly boxplus_def_exact(const ExactPoly& p1, const ExactPoly& p2, int n) {
  check_small(p1, "boxplus_def_exact");
  check_small(p2, "boxplus_def_exact");
  if (n < 1 || n > kMaxN) fail(errc::argument, "boxplus_def_exact: n out of range");
  const int d1 = p1.deg(), d2 = p2.deg();
  if (d1 > n || d2 > n) fail(errc::degree, "boxplus_def_exact: degree above n");
  const int dm = d1 + d2 - n;
  ExactPoly out;
  if (dm < 0) {
    out.c = {mpq_class(0)};
    return out;
  }
  out.c.assign(dm + 1, mpq_class(0));
  const mpz_class nf = fact(n);
  for (int k = 0; k <= dm; ++k) {
    mpq_class s(0);
    for (int j1 = std::max(0, n + k - d2); j1 <= std::min(d1, n + k); ++j1) {
      const int j2 = n + k - j1;
      s += mpq_class(fact(j1) * fact(j2)) * p1.c[j1] * p2.c[j2];
    }
    out.c[k] = s / mpq_class(fact(k) * nf);
  }
  trim(out);
  return out;
}

ExactPoly boxplus_oracle(const ExactPoly& p1, const ExactPoly& p2, int n) {
  check_small(p1, "boxplus_oracle");
  check_small(p2, "boxplus_oracle");
  if (n < 1 || n > kMaxN) fail(errc::argument, "boxplus_oracle: n out of range");
  const int d1 = p1.deg(), d2 = p2.deg();
  if (d1 > n || d2 > n) fail(errc::degree, "boxplus_oracle: degree above n");
  // multiply under z^j * z^k = j! k! / (j+k+1)! z^{j+k+1}
  std::vector<mpq_class> h(d1 + d2 + 2, mpq_class(0));
  for (int j = 0; j <= d1; ++j)
    for (int k = 0; k <= d2; ++k) {
      // the (num, den) constructor does not reduce; canonicalize before use
      mpq_class w(fact(j) * fact(k), fact(j + k + 1));
      w.canonicalize();
      h[j + k + 1] += p1.c[j] * p2.c[k] * w;
    }
  // (1/n!) (d/dz)^{n+1} h: coefficient of z^i picks up (i+n+1)!/i!
  ExactPoly out;
  const int dh = static_cast<int>(h.size()) - 1;
  const int dm = dh - (n + 1);
  if (dm < 0) {
    out.c = {mpq_class(0)};
    return out;
  }
  out.c.assign(dm + 1, mpq_class(0));
  const mpz_class nf = fact(n);
  for (int i = 0; i <= dm; ++i) {
    mpq_class w(fact(i + n + 1), fact(i) * nf);
    w.canonicalize();
    out.c[i] = h[i + n + 1] * w;
  }
  trim(out);
  return out;
}

bool exact_equal(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly x = a, y = b;
  trim(x);
  trim(y);
  if (x.c.size() != y.c.size()) return false;
  for (std::size_t k = 0; k < x.c.size(); ++k)
    if (x.c[k] != y.c[k]) return false;
  return true;
}

LogPoly exact_to_logpoly(const ExactPoly& p, int cap) {
  if (cap < p.deg()) fail(errc::argument, "exact_to_logpoly: cap smaller than degree");
  LogPoly out;
  out.cap = cap;
  out.logc.assign(cap + 1, num::neg_inf);
  for (int k = 0; k <= p.deg(); ++k) {
    if (p.c[k] < 0) fail(errc::domain, "exact_to_logpoly: negative coefficient");
    if (p.c[k] == 0) continue;
    out.logc[k] = std::log(p.c[k].get_d());
  }
  return out;
}

}  // namespace profilekit
