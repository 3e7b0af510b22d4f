#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "profilekit/errors.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/numeric.hpp"

// Root extraction. The derivative-interlacing ladder isolates and bisects one
// root per bracket, but for spread roots the coefficient->root map has
// condition ~ e^{1.65 n}, so at large degree the ladder output is only a
// starting guess. The pipeline therefore refines all roots jointly against
// the stored coefficients (damped least squares in theta = log root), where
// the problem is well posed, then collapses clusters and multiple roots with
// residual-certified snaps. The final configuration is accepted only if its
// rebuilt coefficients match the input to 1e-6 in sup log error.

namespace profilekit {
namespace {

using num::log_add;
using num::log_sub;
using num::neg_inf;

constexpr double kCut = 45.0;  // window below the max term that still moves a double sum

// logc of the monic product prod_i (x + lam_i), lam_i >= 0
std::vector<double> model_logc(const std::vector<double>& lams) {
  const int D = static_cast<int>(lams.size());
  std::vector<double> logc(D + 1, neg_inf);
  logc[0] = 0.0;
  for (int i = 0; i < D; ++i) {
    const double llam = lams[i] > 0.0 ? std::log(lams[i]) : neg_inf;
    for (int k = i + 1; k >= 1; --k) logc[k] = log_add(logc[k - 1], logc[k] + llam);
    logc[0] += llam;
  }
  return logc;
}

std::vector<double> log_deriv(const std::vector<double>& l) {
  const int n = static_cast<int>(l.size()) - 1;
  std::vector<double> out(n, neg_inf);
  for (int k = 0; k < n; ++k)
    if (l[k + 1] != neg_inf) out[k] = l[k + 1] + std::log(static_cast<double>(k + 1));
  return out;
}

struct Sign3 {
  bool trusted;
  int sign;
  double logabs;
};

// three-valued signed evaluation: untrusted when the result sits within two
// nats of the accumulated rounding floor of the dominant term
Sign3 sign_probe(const std::vector<double>& l, double x, double noise_log) {
  const int n = static_cast<int>(l.size()) - 1;
  if (x == 0.0) {
    if (l[0] != neg_inf) return {true, 1, l[0]};
    return {true, 0, neg_inf};
  }
  const double lx = std::log(std::abs(x));
  double tm = neg_inf;
  for (int k = 0; k <= n; ++k) tm = std::max(tm, l[k] + k * lx);
  const double floor_log = tm + noise_log;
  if (x > 0.0) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      double t = l[k] + k * lx;
      if (t >= tm - kCut) s += std::exp(t - tm);
    }
    return {true, 1, tm + std::log(s)};
  }
  double me = neg_inf, mo = neg_inf;
  for (int k = 0; k <= n; k += 2) me = std::max(me, l[k] + k * lx);
  for (int k = 1; k <= n; k += 2) mo = std::max(mo, l[k] + k * lx);
  auto group_sum = [&](int parity, double m) {
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    for (int k = parity; k <= n; k += 2) {
      double t = l[k] + k * lx;
      if (t >= m - kCut) s += std::exp(t - m);
    }
    return m + std::log(s);
  };
  const double lp = group_sum(0, me);
  const double ln = group_sum(1, mo);
  if (ln == neg_inf) return {true, 1, lp};
  if (lp == neg_inf) return {true, -1, ln};
  const double d = lp - ln;
  if (std::abs(d) <= 1e-14) return {false, 0, floor_log};
  double la;
  int sg;
  if (d > 0) {
    la = lp + std::log1p(-std::exp(-d));
    sg = 1;
  } else {
    la = ln + std::log1p(-std::exp(d));
    sg = -1;
  }
  if (la < floor_log + 2.0) return {false, sg, la};
  return {true, sg, la};
}

double term_max(const std::vector<double>& l, double x) {
  if (x == 0.0) return l[0];
  const double lx = std::log(std::abs(x));
  double tm = neg_inf;
  for (std::size_t k = 0; k < l.size(); ++k) tm = std::max(tm, l[k] + k * lx);
  return tm;
}

// boundary between a trusted point xt and an ambiguous point xa
double bisect_trust(const std::vector<double>& l, double xt, double xa, double noise_log) {
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (xt + xa);
    if (std::abs(xa - xt) <= 1e-11 * (1.0 + std::abs(mid))) break;
    if (sign_probe(l, mid, noise_log).trusted) xt = mid;
    else xa = mid;
  }
  return 0.5 * (xt + xa);
}

struct BracketStat {
  long ambiguous = 0;
  bool mismatch = false;
  double lo = 0, hi = 0;
};

// one root inside [a, b]: trusted sign change -> bisection plus a few Newton
// steps; an ambiguous zone is located from both sides and its center taken;
// both endpoints trusted with equal sign is recorded and an endpoint returned
// (initialization never aborts; certification happens on the refined result)
double solve_bracket(const std::vector<double>& l, const std::vector<double>& ld, double a,
                     double b, double noise_log, BracketStat& st) {
  if (b - a <= 1e-13 * (1.0 + std::abs(b))) return 0.5 * (a + b);
  const Sign3 A = sign_probe(l, a, noise_log);
  const Sign3 B = sign_probe(l, b, noise_log);
  if (!A.trusted) ++st.ambiguous;
  if (!B.trusted) ++st.ambiguous;
  if (A.trusted && B.trusted && A.sign != 0 && B.sign != 0 && A.sign != B.sign) {
    double lo = a, hi = b;
    const int slo = A.sign;
    std::optional<double> ambig;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-12 * (1.0 + std::abs(mid))) break;
      Sign3 M = sign_probe(l, mid, noise_log);
      if (!M.trusted) {
        ++st.ambiguous;
        ambig = mid;
        break;
      }
      if (M.sign == slo) lo = mid;
      else hi = mid;
    }
    if (!ambig) {
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 8; ++it) {
        Sign3 s1 = sign_probe(l, x, noise_log);
        Sign3 s2 = sign_probe(ld, x, noise_log);
        if (!s1.trusted || !s2.trusted || s1.sign == 0 || s2.sign == 0) break;
        double step = s1.sign * s2.sign * std::exp(s1.logabs - s2.logabs);
        double xn = x - step;
        if (!(a <= xn && xn <= b)) break;
        x = xn;
        if (std::abs(step) <= 1e-13 * (1.0 + std::abs(x))) break;
      }
      return x;
    }
    double zl = bisect_trust(l, lo, *ambig, noise_log);
    double zr = bisect_trust(l, hi, *ambig, noise_log);
    return 0.5 * (zl + zr);
  }
  if (A.trusted && !B.trusted) {
    double zl = bisect_trust(l, a, b, noise_log);
    return 0.5 * (zl + b);
  }
  if (B.trusted && !A.trusted) {
    double zr = bisect_trust(l, b, a, noise_log);
    return 0.5 * (a + zr);
  }
  if (!A.trusted && !B.trusted) return 0.5 * (a + b);
  if (A.sign == 0 || B.sign == 0) return 0.5 * (a + b);
  st.mismatch = true;
  st.lo = a;
  st.hi = b;
  const double ra = A.logabs - term_max(l, a);
  const double rb = B.logabs - term_max(l, b);
  return ra <= rb ? a : b;
}

struct LadderStats {
  long ambiguous = 0;
  bool has_mismatch = false;
  int mm_level = 0;
  double mm_lo = 0, mm_hi = 0;
};

// bottom-up interlacing ladder over the derivative chain; returns nonpositive
// root guesses, ascending
std::vector<double> ladder_init(const std::vector<double>& u, LadderStats& st) {
  const int D = static_cast<int>(u.size()) - 1;
  std::vector<std::vector<double>> levels(D);
  levels[0] = u;
  for (int j = 1; j < D; ++j) levels[j] = log_deriv(levels[j - 1]);
  double bexp = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= D; ++j) bexp = std::max(bexp, (u[D - j] - u[D]) / j);
  const double B = 2.0 * std::exp(bexp);  // all roots lie in (-B, 0]
  std::vector<double> rts{-std::exp(levels[D - 1][0] - levels[D - 1][1])};
  for (int lev = D - 2; lev >= 0; --lev) {
    const auto& l = levels[lev];
    const auto& ld = levels[lev + 1];
    const int d = D - lev;
    const double noise_log = std::log(5e-13 * (d + 1));
    std::sort(rts.begin(), rts.end());
    std::vector<double> bnds;
    bnds.reserve(rts.size() + 2);
    bnds.push_back(-B);
    bnds.insert(bnds.end(), rts.begin(), rts.end());
    bnds.push_back(0.0);
    std::vector<double> out(bnds.size() - 1);
    std::vector<BracketStat> bs(out.size());
    num::parallel_for(out.size(), [&](std::size_t i) {
      out[i] = solve_bracket(l, ld, bnds[i], bnds[i + 1], noise_log, bs[i]);
    });
    for (const auto& s : bs) {
      st.ambiguous += s.ambiguous;
      if (s.mismatch && !st.has_mismatch) {
        st.has_mismatch = true;
        st.mm_level = lev;
        st.mm_lo = s.lo;
        st.mm_hi = s.hi;
      }
    }
    rts = std::move(out);
  }
  std::sort(rts.begin(), rts.end());
  return rts;
}

// d m[k] / d theta_i = exp(theta_i + q_i[k] - m[k]) with q_i the quotient by
// (x + lam_i); quotient entries from two-direction synthetic division, and
// entries unstable in both directions patched exactly from prefix/suffix
// subproduct tables
Eigen::MatrixXd jacobian(const std::vector<double>& th, const std::vector<double>& m) {
  const int D = static_cast<int>(th.size());
  std::vector<std::vector<double>> pre(D + 1, std::vector<double>(D + 1, neg_inf));
  pre[0][0] = 0.0;
  for (int i = 0; i < D; ++i) {
    const auto& row = pre[i];
    auto& nxt = pre[i + 1];
    for (int k = i + 1; k >= 1; --k) nxt[k] = log_add(row[k - 1], row[k] + th[i]);
    nxt[0] = row[0] + th[i];
  }
  std::vector<std::vector<double>> suf(D + 1, std::vector<double>(D + 1, neg_inf));
  suf[D][0] = 0.0;
  for (int i = D - 1; i >= 0; --i) {
    const auto& row = suf[i + 1];
    auto& nxt = suf[i];
    const int d = D - i;
    for (int k = d; k >= 1; --k) nxt[k] = log_add(row[k - 1], (k <= d - 1 ? row[k] : neg_inf) + th[i]);
    nxt[0] = row[0] + th[i];
  }
  Eigen::MatrixXd J(D, D);
  num::parallel_for(static_cast<std::size_t>(D), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const double lam_l = th[i];
    std::vector<double> q_top(D, neg_inf), q_bot(D, neg_inf);
    std::vector<char> ok_top(D, 0), ok_bot(D, 0);
    q_top[D - 1] = m[D];
    ok_top[D - 1] = 1;
    for (int k = D - 1; k >= 1; --k) {
      if (!ok_top[k]) break;
      double sub = lam_l + q_top[k];
      if (sub < m[k] - 0.693) {
        q_top[k - 1] = log_sub(m[k], sub);
        ok_top[k - 1] = num::finite(q_top[k - 1]) ? 1 : 0;
      } else {
        break;
      }
    }
    q_bot[0] = m[0] - lam_l;
    ok_bot[0] = num::finite(q_bot[0]) ? 1 : 0;
    for (int k = 1; k < D; ++k) {
      if (!ok_bot[k - 1]) break;
      if (q_bot[k - 1] < m[k] - 0.693) {
        double v = log_sub(m[k], q_bot[k - 1]);
        q_bot[k] = num::finite(v) ? v - lam_l : neg_inf;
        ok_bot[k] = num::finite(q_bot[k]) ? 1 : 0;
      } else {
        break;
      }
    }
    for (int k = 0; k < D; ++k) {
      double q = ok_top[k] ? q_top[k] : (ok_bot[k] ? q_bot[k] : neg_inf);
      if (!ok_top[k] && !ok_bot[k]) {
        const int lo = std::max(0, k - (D - i - 1));
        const int hi = std::min(i, k);
        if (lo <= hi) {
          double mx = neg_inf;
          for (int t = lo; t <= hi; ++t) mx = std::max(mx, pre[i][t] + suf[i + 1][k - t]);
          if (mx != neg_inf) {
            double s = 0.0;
            for (int t = lo; t <= hi; ++t) s += std::exp(pre[i][t] + suf[i + 1][k - t] - mx);
            q = mx + std::log(s);
          }
        }
      }
      double v = 0.0;
      if (num::finite(q) && num::finite(m[k])) v = std::min(std::exp(th[i] + q - m[k]), 1.0);
      J(k, i) = v;
    }
  });
  return J;
}

struct FitResult {
  std::vector<double> lams;
  double res;
};

using TieGroups = std::vector<std::vector<int>>;

// damped least squares on theta = log lam against the monic-normalized target
// coefficients; tied groups share one column and one update
FitResult gauss_newton(const std::vector<double>& u, std::vector<double> lams0, int iters,
                       double tol, const TieGroups& ties) {
  const int D = static_cast<int>(lams0.size());
  std::vector<double> th(D);
  for (int i = 0; i < D; ++i) th[i] = std::log(std::max(lams0[i], 1e-300));
  for (const auto& grp : ties) {
    double s = 0.0;
    for (int g : grp) s += th[g];
    for (int g : grp) th[g] = s / grp.size();
  }
  std::vector<double> t_norm(D);
  for (int k = 0; k < D; ++k) t_norm[k] = u[k] - u[D];
  auto lam_of = [&](const std::vector<double>& t) {
    std::vector<double> l(D);
    for (int i = 0; i < D; ++i) l[i] = std::exp(t[i]);
    return l;
  };
  auto resid = [&](const std::vector<double>& mdl) {
    Eigen::VectorXd r(D);
    for (int k = 0; k < D; ++k) {
      double v = mdl[k] - t_norm[k];
      r(k) = std::isfinite(v) ? v : 0.0;
    }
    return r;
  };
  std::vector<double> m = model_logc(lam_of(th));
  Eigen::VectorXd r = resid(m);
  double best = r.lpNorm<Eigen::Infinity>();
  double mu = 1e-8;
  int stall = 0;
  std::vector<int> keep(D, 1);
  for (const auto& grp : ties)
    for (std::size_t g = 1; g < grp.size(); ++g) keep[grp[g]] = 0;
  std::vector<int> keep_idx;
  for (int i = 0; i < D; ++i)
    if (keep[i]) keep_idx.push_back(i);
  const int P = static_cast<int>(keep_idx.size());
  for (int it = 0; it < iters; ++it) {
    Eigen::MatrixXd J = jacobian(th, m);
    for (const auto& grp : ties) {
      for (std::size_t g = 1; g < grp.size(); ++g) J.col(grp[0]) += J.col(grp[g]);
    }
    Eigen::MatrixXd Js(D, P);
    Eigen::VectorXd cs(P);
    for (int p = 0; p < P; ++p) {
      double nrm = J.col(keep_idx[p]).norm();
      cs(p) = nrm == 0.0 ? 1.0 : nrm;
      Js.col(p) = J.col(keep_idx[p]) / cs(p);
    }
    bool accepted = false;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::MatrixXd M(D + P, P);
      M.topRows(D) = Js;
      M.bottomRows(P) = std::sqrt(mu) * Eigen::MatrixXd::Identity(P, P);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(D + P);
      rhs.head(D) = -r;
      Eigen::VectorXd sol = M.colPivHouseholderQr().solve(rhs);
      std::vector<double> dth(D, 0.0);
      for (int p = 0; p < P; ++p) dth[keep_idx[p]] = sol(p) / cs(p);
      for (const auto& grp : ties)
        for (int g : grp) dth[g] = dth[grp[0]];
      double mx = 0.0;
      for (double v : dth) mx = std::max(mx, std::abs(v));
      if (mx > 2.0)
        for (double& v : dth) v *= 2.0 / mx;
      for (double frac : {1.0, 0.5, 0.25}) {
        std::vector<double> th_new(D);
        for (int i = 0; i < D; ++i) th_new[i] = th[i] + frac * dth[i];
        for (const auto& grp : ties) {
          double s = 0.0;
          for (int g : grp) s += th_new[g];
          for (int g : grp) th_new[g] = s / grp.size();
        }
        std::vector<double> m_new = model_logc(lam_of(th_new));
        Eigen::VectorXd r_new = resid(m_new);
        double cand = r_new.lpNorm<Eigen::Infinity>();
        if (cand < best) {
          th = std::move(th_new);
          m = std::move(m_new);
          r = std::move(r_new);
          best = cand;
          mu = std::max(mu * 0.1, 1e-14);
          accepted = true;
          break;
        }
      }
      if (!accepted) mu *= 10.0;
    }
    if (!accepted) {
      if (++stall >= 2) break;
    } else {
      stall = 0;
    }
    if (best <= tol) break;
  }
  return {lam_of(th), best};
}

// 1-D refit of the common value of cand[i..j] (log parameter, secant Hessian)
double refit_cluster_value(const std::vector<double>& t_norm, std::vector<double> cand, int i,
                           int j) {
  const int D = static_cast<int>(cand.size());
  auto resid2 = [&](double c) {
    for (int k = i; k <= j; ++k) cand[k] = c;
    std::vector<double> m = model_logc(cand);
    double s = 0.0;
    for (int k = 0; k < D; ++k) {
      double rv = m[k] - t_norm[k];
      if (std::isfinite(rv)) s += rv * rv;
    }
    return s;
  };
  double lc = std::log(std::max(cand[i], 1e-300));
  double f0 = resid2(std::exp(lc));
  for (int it = 0; it < 25; ++it) {
    const double h = 1e-7;
    double fp = resid2(std::exp(lc + h));
    double fm = resid2(std::exp(lc - h));
    double g = (fp - fm) / (2 * h);
    double H = (fp - 2 * f0 + fm) / (h * h);
    if (!(H > 0.0) || !std::isfinite(H)) break;
    double step = std::clamp(-g / H, -0.2, 0.2);
    double f1 = resid2(std::exp(lc + step));
    if (f1 < f0) {
      lc += step;
      f0 = f1;
    } else {
      break;
    }
    if (std::abs(step) < 1e-14) break;
  }
  return std::exp(lc);
}

// collapse runs of nearby values over a scale ladder; a collapse survives only
// if the rebuilt coefficients stay within 1.3x of the incoming residual
std::pair<std::vector<double>, double> snap_clusters(const std::vector<double>& u,
                                                     std::vector<double> lams, double r0) {
  std::sort(lams.begin(), lams.end());
  const int D = static_cast<int>(lams.size());
  std::vector<double> t_norm(D);
  for (int k = 0; k < D; ++k) t_norm[k] = u[k] - u[D];
  for (double scale : {1e-9, 1e-7, 1e-5, 1e-3, 2e-2, 6e-2}) {
    std::vector<double> cand = lams;
    std::vector<std::pair<int, int>> runs;
    int i = 0;
    while (i < D) {
      int j = i;
      while (j + 1 < D && cand[j + 1] - cand[j] <= scale * (1.0 + cand[j])) ++j;
      if (j > i) runs.emplace_back(i, j);
      i = j + 1;
    }
    if (runs.empty()) continue;
    for (auto [a, b] : runs) {
      double mean = std::accumulate(cand.begin() + a, cand.begin() + b + 1, 0.0) / (b - a + 1);
      for (int k = a; k <= b; ++k) cand[k] = mean;
      double v = refit_cluster_value(t_norm, cand, a, b);
      for (int k = a; k <= b; ++k) cand[k] = v;
    }
    std::vector<double> m = model_logc(cand);
    double r = 0.0;
    for (int k = 0; k < D; ++k) {
      double rv = m[k] - t_norm[k];
      if (std::isfinite(rv)) r = std::max(r, std::abs(rv));
    }
    if (r <= std::max(1.3 * r0, 1e-10)) {
      lams = std::move(cand);
      r0 = r;
    }
  }
  return {lams, r0};
}

// regions whose local density is anomalous against their immediate flanks
std::vector<std::pair<int, int>> cluster_candidates(const std::vector<double>& lams,
                                                    int max_cands = 3) {
  const int D = static_cast<int>(lams.size());
  if (D < 16) return {};
  auto count_in = [&](double lo, double hi) {
    return static_cast<int>(std::upper_bound(lams.begin(), lams.end(), hi) -
                            std::lower_bound(lams.begin(), lams.end(), lo));
  };
  std::vector<double> contrast(D);
  std::vector<double> w(D);
  for (int k = 0; k < D; ++k) {
    w[k] = 0.03 * (1.0 + lams[k]);
    int n_in = count_in(lams[k] - w[k], lams[k] + w[k]);
    int n_out = count_in(lams[k] - 4 * w[k], lams[k] + 4 * w[k]);
    contrast[k] = n_in / (n_out - n_in + 1.0);
  }
  std::vector<int> order(D);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return contrast[a] > contrast[b]; });
  std::vector<std::pair<int, int>> out;
  std::vector<char> taken(D, 0);
  for (int k : order) {
    if (contrast[k] < 4.0) break;
    if (taken[k]) continue;
    int lo = static_cast<int>(std::lower_bound(lams.begin(), lams.end(), lams[k] - 2.5 * w[k]) -
                              lams.begin());
    int hi = static_cast<int>(std::upper_bound(lams.begin(), lams.end(), lams[k] + 2.5 * w[k]) -
                              lams.begin()) -
             1;
    if (hi - lo + 1 < 8) continue;
    if (lams[hi] - lams[lo] <= 1e-9 * (1.0 + std::abs(lams[lo]))) continue;
    bool clash = false;
    for (int t = lo; t <= hi && !clash; ++t) clash = taken[t];
    if (clash) continue;
    for (int t = std::max(0, lo - 1); t <= std::min(D - 1, hi + 1); ++t) taken[t] = 1;
    out.emplace_back(lo, hi);
    if (static_cast<int>(out.size()) >= max_cands) break;
  }
  return out;
}

TieGroups tie_groups_of(const std::vector<double>& lams, const std::vector<double>& tie_values) {
  TieGroups out;
  for (double v : tie_values) {
    std::vector<int> grp;
    for (int i = 0; i < static_cast<int>(lams.size()); ++i)
      if (lams[i] == v) grp.push_back(i);
    if (grp.size() >= 2) out.push_back(std::move(grp));
  }
  return out;
}

// tied refits over candidate clusters; the widest multiplicity whose tied fit
// preserves the residual wins (nested tie classes make the residual floor
// monotone in the multiplicity, so first success scanning large-to-small is
// the most parsimonious consistent answer)
std::pair<std::vector<double>, double> snap_multiplicity(const std::vector<double>& u,
                                                         std::vector<double> lams, double res) {
  std::sort(lams.begin(), lams.end());
  std::vector<double> tie_values;
  for (int round = 0; round < 3; ++round) {
    auto cands = cluster_candidates(lams);
    std::erase_if(cands, [&](const std::pair<int, int>& c) {
      for (int t = c.first; t <= c.second; ++t)
        for (double v : tie_values)
          if (lams[t] == v) return true;
      return false;
    });
    if (cands.empty()) break;
    bool progressed = false;
    for (auto [i, j] : cands) {
      std::optional<std::pair<FitResult, double>> found;
      for (int dm : {1, 0, -1, -2, -3, -4}) {
        const int m_sz = (j - i + 1) + dm;
        if (m_sz < 2) continue;
        const int lo = j - m_sz + 1;
        if (lo < 0) continue;
        std::vector<double> cand = lams;
        double gm = 0.0;
        for (int t = lo; t <= j; ++t) gm += std::log(std::max(cand[t], 1e-300));
        gm = std::exp(gm / m_sz);
        std::vector<int> grp(m_sz);
        std::iota(grp.begin(), grp.end(), lo);
        for (int t : grp) cand[t] = gm;
        TieGroups ties = tie_groups_of(cand, tie_values);
        ties.insert(ties.begin(), grp);
        FitResult f1 = gauss_newton(u, cand, 35, 1e-12, ties);
        if (f1.res > std::max(3e-5, 10.0 * res)) continue;  // wrong membership plateaus high
        FitResult f2 = gauss_newton(u, f1.lams, 90, 1e-12, ties);
        if (f2.res <= std::max(2.0 * res, 1e-10)) {
          found = {f2, f2.lams[grp[0]]};
          break;
        }
      }
      if (found) {
        lams = found->first.lams;
        std::sort(lams.begin(), lams.end());
        res = found->first.res;
        tie_values.push_back(found->second);
        progressed = true;
        break;  // positions moved: re-detect candidates
      }
    }
    if (!progressed) break;
  }
  return {lams, res};
}

}  // namespace

std::vector<double> roots(const LogPoly& p) {
  const int lo_i = p.low();
  const int dg = p.deg();
  const int D = dg - lo_i;
  if (D == 0) return std::vector<double>(lo_i, 0.0);
  std::vector<double> u(p.logc.begin() + lo_i, p.logc.begin() + dg + 1);
  for (double v : u)
    if (!num::finite(v))
      fail(errc::consistency,
           "zero coefficient inside the support: no factorization over nonpositive roots");
  LadderStats st;
  std::vector<double> init = ladder_init(u, st);
  if (st.has_mismatch && st.ambiguous == 0) {
    // every probe was trusted, so the missing sign change is a certified
    // witness that the input is not real-rooted
    throw ladder_error(st.mm_level, st.mm_lo, st.mm_hi,
                       "no sign change in a bracket at derivative level " +
                           std::to_string(st.mm_level));
  }
  std::vector<double> lams0(D);
  for (int i = 0; i < D; ++i) lams0[i] = std::max(-init[i], 1e-300);
  std::sort(lams0.begin(), lams0.end());
  FitResult fit = gauss_newton(u, lams0, 200, 1e-12, {});
  auto [lams, res] = snap_clusters(u, fit.lams, fit.res);
  FitResult post = gauss_newton(u, lams, 60, 1e-12, {});
  if (post.res < res) {
    auto [l2, r2] = snap_clusters(u, post.lams, post.res);
    if (r2 <= res * 1.3 || r2 <= 1e-10) {
      lams = std::move(l2);
      res = r2;
    }
  }
  std::tie(lams, res) = snap_multiplicity(u, lams, res);
  std::tie(lams, res) = snap_clusters(u, lams, res);
  if (!(res <= 1e-6)) {
    throw error(errc::consistency,
                "root extraction could not certify the result; rebuilt-coefficient "
                "residual " +
                    std::to_string(res));
  }
  std::vector<double> out;
  out.reserve(D + lo_i);
  for (int i = D - 1; i >= 0; --i) out.push_back(-lams[i]);
  out.insert(out.end(), lo_i, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace profilekit
