#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/errors.hpp"
#include "profilekit/freeconv.hpp"
#include "profilekit/io.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/profile.hpp"
#include "profilekit/suite.hpp"
#include "profilekit/transforms.hpp"

namespace pk = profilekit;

namespace {

constexpr int kMaxN = 5000;

// config/spec mistakes exit with code 2; library errors exit with code 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// everything the subcommands bind their flags into
struct ExperimentConfig {
  std::string command;
  int n = 0;
  bool n_set = false;
  int a = 0, b = 0, ell = 0;
  std::string op;
  std::string kind;
  std::string roots_spec;
  std::string closed_form;
  std::string grid_spec;
  std::string in_path, in2_path, out_path;
  bool reflected = false;
  double tol = 1e-2;
  unsigned seed = 20240801u;
  int only = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + tok + "' as a number");
  }
}

long parse_long(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + tok + "' as an integer");
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("--grid expects LO:HI:COUNT, got '" + spec + "'");
  const double lo = parse_double(parts[0], "--grid LO");
  const double hi = parse_double(parts[1], "--grid HI");
  const long count = parse_long(parts[2], "--grid COUNT");
  if (count < 1 || count > 100000) throw UsageError("--grid COUNT must be in [1, 100000]");
  if (count > 1 && !(lo < hi)) throw UsageError("--grid needs LO < HI when COUNT > 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (long i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> generate_roots(const ExperimentConfig& cfg) {
  const auto parts = split(cfg.roots_spec, ':');
  const std::string& name = parts[0];
  const auto need_n = [&]() -> int {
    if (!cfg.n_set) throw UsageError("generator '" + name + "' requires --n");
    return cfg.n;
  };
  if (name == "uniform_grid") {
    if (parts.size() != 3) throw UsageError("uniform_grid expects uniform_grid:LO:HI");
    const double lo = parse_double(parts[1], "uniform_grid LO");
    const double hi = parse_double(parts[2], "uniform_grid HI");
    if (!(lo < hi)) throw UsageError("uniform_grid needs LO < HI");
    const int n = need_n();
    std::vector<double> out(n);
    if (n == 1) {
      out[0] = lo;
      return out;
    }
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    out.front() = lo;
    out.back() = hi;
    return out;
  }
  if (name == "dirac") {
    if (parts.size() != 3) throw UsageError("dirac expects dirac:VALUE:COUNT");
    const double v = parse_double(parts[1], "dirac VALUE");
    const long count = parse_long(parts[2], "dirac COUNT");
    if (count < 1 || count > kMaxN) throw UsageError("dirac COUNT must be in [1, 5000]");
    return std::vector<double>(count, v);
  }
  if (name == "stirling") {
    if (parts.size() != 1) throw UsageError("stirling takes no parameters");
    const int n = need_n();
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = -static_cast<double>(j) / n;
    return out;
  }
  if (name == "binomial") {
    if (parts.size() != 1) throw UsageError("binomial takes no parameters");
    return std::vector<double>(need_n(), -1.0);
  }
  if (name == "file") {
    if (parts.size() < 2) throw UsageError("file expects file:PATH");
    // paths may themselves contain ':'
    return pk::read_roots_file(cfg.roots_spec.substr(5));
  }
  throw UsageError("unknown root generator '" + name +
                   "' (want uniform_grid | dirac | stirling | binomial | file)");
}

int cmd_make(const ExperimentConfig& cfg) {
  std::vector<double> rs = generate_roots(cfg);
  const int cap = cfg.n_set ? cfg.n : static_cast<int>(rs.size());
  if (cap < 1 || cap > kMaxN) throw UsageError("--n must be in [1, 5000]");
  if (static_cast<int>(rs.size()) > cap)
    throw UsageError("generator yields " + std::to_string(rs.size()) + " roots > cap " +
                     std::to_string(cap));
  pk::LogPoly p;
  if (cfg.reflected) {
    for (double& r : rs) {
      if (r < 0.0) throw UsageError("--reflected requires nonnegative roots");
      r = -r;
    }
    p = pk::as_reflected(pk::from_roots(rs, cap));
  } else {
    for (double r : rs)
      if (r > 0.0) throw UsageError("roots must be nonpositive (use --reflected for atoms >= 0)");
    p = pk::from_roots(rs, cap);
  }
  pk::write_logpoly(cfg.out_path, p);
  return 0;
}

int cmd_profile(const ExperimentConfig& cfg) {
  const pk::Profile prof = pk::empirical_profile(pk::read_logpoly(cfg.in_path));
  pk::write_profile_csv(cfg.out_path, prof);
  return 0;
}

int cmd_roots(const ExperimentConfig& cfg) {
  const pk::LogPoly p = pk::read_logpoly(cfg.in_path);
  const pk::EmpiricalMeasure m = pk::empirical_measure(p);
  pk::write_roots_csv(cfg.out_path, m.atoms);
  std::cout << "deg=" << p.deg() << " cap=" << p.cap
            << " infinity_mass=" << pk::format_g17(m.infinity_mass) << "\n";
  return 0;
}

int cmd_conv(const ExperimentConfig& cfg) {
  const pk::LogPoly p1 = pk::read_logpoly(cfg.in_path);
  const pk::LogPoly p2 = pk::read_logpoly(cfg.in2_path);
  pk::LogPoly out;
  if (cfg.op == "boxplus")
    out = pk::boxplus_n(p1, p2, p1.cap);
  else if (cfg.op == "boxtimes")
    out = pk::boxtimes_n(p1, p2, p1.cap);
  else if (cfg.op == "hadamard")
    out = pk::hadamard_n(p1, p2);
  else
    throw UsageError("--op must be boxplus | boxtimes | hadamard");
  pk::write_logpoly(cfg.out_path, out);
  const double inf_mass = static_cast<double>(out.cap - out.deg()) / out.cap;
  std::cout << "deg=" << out.deg() << " cap=" << out.cap
            << " infinity_mass=" << pk::format_g17(inf_mass) << "\n";
  return 0;
}

int cmd_diff(const ExperimentConfig& cfg) {
  const pk::LogPoly p = pk::read_logpoly(cfg.in_path);
  if (cfg.n_set && cfg.n != p.cap)
    throw UsageError("--n " + std::to_string(cfg.n) + " does not match the input cap " +
                     std::to_string(p.cap));
  const pk::LogPoly out = pk::repeated_action(p, cfg.a, cfg.b, cfg.ell, p.cap);
  pk::write_logpoly(cfg.out_path, out);
  std::cout << "deg=" << out.deg() << " cap=" << out.cap << "\n";
  return 0;
}

int cmd_transform(const ExperimentConfig& cfg) {
  const pk::LogPoly p = pk::read_logpoly(cfg.in_path);
  const pk::EmpiricalMeasure m = pk::empirical_measure(p);
  const std::vector<double> grid = parse_grid(cfg.grid_spec);
  pk::TransformSample s;
  if (cfg.kind == "G")
    s.kind = pk::TransformSample::Kind::G;
  else if (cfg.kind == "R")
    s.kind = pk::TransformSample::Kind::R;
  else if (cfg.kind == "S")
    s.kind = pk::TransformSample::Kind::S;
  else if (cfg.kind == "psi")
    s.kind = pk::TransformSample::Kind::psi;
  else
    throw UsageError("--kind must be G | R | S | psi");
  s.points.reserve(grid.size());
  for (double t : grid) {
    double v = 0.0;
    switch (s.kind) {
      case pk::TransformSample::Kind::G: v = pk::cauchy(m, t); break;
      case pk::TransformSample::Kind::R: v = pk::r_transform(m, t); break;
      case pk::TransformSample::Kind::S: v = pk::s_transform(m, t); break;
      default: v = pk::psi_transform(m, t); break;
    }
    s.points.emplace_back(t, v);
  }
  s.domain_lo = grid.front();
  s.domain_hi = grid.back();
  s.open_lo = s.open_hi = false;
  pk::write_transform_csv(cfg.out_path, s);
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const pk::LogPoly p = pk::read_logpoly(cfg.in_path);
  const pk::EmpiricalMeasure m = pk::empirical_measure(p);

  const auto parts = split(cfg.closed_form, ':');
  const std::string& law = parts[0];
  const auto default_grid = [](double lo, double hi) {
    std::vector<double> g(8);
    for (int i = 0; i < 8; ++i) g[i] = lo + (hi - lo) * i / 7.0;
    return g;
  };
  std::vector<double> grid;
  std::vector<double> atoms;  // comparison atoms after any law-specific mapping
  double (*ref)(double, double, double) = nullptr;
  double pa = 0.0, pb = 0.0;

  if (law == "mu_kappa") {
    if (parts.size() != 2) throw UsageError("expected mu_kappa:KAPPA");
    pa = parse_double(parts[1], "mu_kappa KAPPA");
    // the exact-zero block comes from the monomial shift of diff; the bulk law
    // lives on the surviving roots mapped to [-1, 1]
    for (double x : m.atoms)
      if (std::abs(x) > 1e-9) atoms.push_back(2.0 * x - 1.0);
    const double edge = pk::y_kappa(pa, pk::z_kappa(pa));
    grid = cfg.grid_spec.empty() ? default_grid(1.5 * edge, 3.0 * edge)
                                 : parse_grid(cfg.grid_spec);
    ref = [](double k, double, double t) { return pk::mu_kappa_cauchy(k, t); };
  } else if (law == "nu_aa") {
    if (parts.size() != 3) throw UsageError("expected nu_aa:A:KAPPA");
    pa = parse_double(parts[1], "nu_aa A");
    pb = parse_double(parts[2], "nu_aa KAPPA");
    atoms = m.atoms;
    const double hi = std::max(pk::nu_aa_support_hi(pa, pb), 1.0);
    grid = cfg.grid_spec.empty() ? default_grid(hi + 1.0, hi + 4.0) : parse_grid(cfg.grid_spec);
    ref = [](double a, double k, double t) {
      return pk::nu_aa_cauchy(a, k, {t, 0.0}).real();
    };
  } else if (law == "nu01") {
    if (parts.size() != 2) throw UsageError("expected nu01:KAPPA");
    pa = parse_double(parts[1], "nu01 KAPPA");
    atoms = m.atoms;
    grid = cfg.grid_spec.empty() ? default_grid(2.0, 5.0) : parse_grid(cfg.grid_spec);
    ref = [](double k, double, double t) { return k / t + (1.0 - k) / (t - 1.0); };
  } else {
    throw UsageError("unknown closed form '" + law +
                     "' (want mu_kappa:K | nu_aa:A:K | nu01:K)");
  }

  std::ofstream f(cfg.out_path);
  if (!f) pk::fail(pk::errc::io, "cannot open '" + cfg.out_path + "' for writing");
  f << "t,empirical,closed_form,abs_error\n";
  double sup = 0.0, mean = 0.0;
  for (double t : grid) {
    double gemp = 0.0;
    for (double x : atoms) gemp += 1.0 / (t - x);
    gemp /= m.cap;
    const double gref = law == "nu_aa" ? ref(pa, pb, t) : ref(pa, 0.0, t);
    const double err = std::abs(gemp - gref);
    sup = std::max(sup, err);
    mean += err / grid.size();
    f << pk::format_g17(t) << ',' << pk::format_g17(gemp) << ',' << pk::format_g17(gref) << ','
      << pk::format_g17(err) << '\n';
  }
  f << "sup_error,mean_error,n\n"
    << pk::format_g17(sup) << ',' << pk::format_g17(mean) << ',' << m.cap << '\n';
  if (!f.good()) pk::fail(pk::errc::io, "short write on '" + cfg.out_path + "'");
  f.close();

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = sup <= cfg.tol;
  std::printf("compare: sup_error=%.6e mean_error=%.6e n=%d runtime_seconds=%.3f tol=%g -> %s\n",
              sup, mean, m.cap, secs, cfg.tol, pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_suite(const ExperimentConfig& cfg) {
  std::vector<pk::CriterionResult> results;
  if (cfg.only > 0)
    results.push_back(pk::run_criterion(cfg.only, cfg.seed));
  else
    results = pk::run_all(cfg.seed);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%s  %2d %-28s (%.2fs): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  CLI::App app{"finite free convolution and exponential-profile toolkit"};
  app.require_subcommand(1);

  auto* mk = app.add_subcommand("make", "construct a polynomial and write it as JSON");
  mk->add_option("--roots", cfg.roots_spec,
                 "uniform_grid:LO:HI | dirac:VALUE:COUNT | stirling | binomial | file:PATH")
      ->required();
  auto* mkn = mk->add_option("--n", cfg.n, "degree cap, <= 5000; defaults to the root count");
  mk->add_flag("--reflected", cfg.reflected,
               "treat generator output as nonnegative roots and store the mirrored polynomial");
  mk->add_option("--out", cfg.out_path, "output JSON path")->required();

  auto* pr = app.add_subcommand("profile", "empirical coefficient profile of a polynomial");
  pr->add_option("--in", cfg.in_path, "input polynomial JSON")->required();
  pr->add_option("--out", cfg.out_path, "output CSV path")->required();

  auto* rt = app.add_subcommand("roots", "extract the represented roots");
  rt->add_option("--in", cfg.in_path, "input polynomial JSON")->required();
  rt->add_option("--out", cfg.out_path, "output CSV path")->required();

  auto* cv = app.add_subcommand("conv", "convolve two polynomials");
  cv->add_option("--op", cfg.op, "boxplus | boxtimes | hadamard")->required();
  cv->add_option("first", cfg.in_path, "left input JSON")->required();
  cv->add_option("second", cfg.in2_path, "right input JSON")->required();
  cv->add_option("--out", cfg.out_path, "output JSON path")->required();

  auto* df = app.add_subcommand("diff", "apply the normalized operator z^a (d/dz)^b ell times");
  df->add_option("--in", cfg.in_path, "input polynomial JSON (reflected)")->required();
  df->add_option("--a", cfg.a, "monomial power a >= 0")->required()->check(CLI::NonNegativeNumber);
  df->add_option("--b", cfg.b, "derivative order b >= 0")->required()->check(CLI::NonNegativeNumber);
  df->add_option("--ell", cfg.ell, "number of applications")
      ->required()
      ->check(CLI::NonNegativeNumber);
  auto* dfn = df->add_option("--n", cfg.n, "expected cap; must match the input");
  df->add_option("--out", cfg.out_path, "output JSON path")->required();

  auto* tr = app.add_subcommand("transform", "sample a transform of the root measure");
  tr->add_option("--in", cfg.in_path, "input polynomial JSON")->required();
  tr->add_option("--kind", cfg.kind, "G | R | S | psi")->required();
  tr->add_option("--grid", cfg.grid_spec, "LO:HI:COUNT evaluation grid")->required();
  tr->add_option("--out", cfg.out_path, "output CSV path (JSON sidecar written alongside)")
      ->required();

  auto* cp = app.add_subcommand("compare", "empirical Cauchy transform vs a closed-form law");
  cp->add_option("--in", cfg.in_path, "input polynomial JSON")->required();
  cp->add_option("--closed-form", cfg.closed_form, "mu_kappa:K | nu_aa:A:K | nu01:K")->required();
  cp->add_option("--grid", cfg.grid_spec, "LO:HI:COUNT; default: exterior points of the law");
  cp->add_option("--tol", cfg.tol, "pass threshold on the sup error (default 1e-2)");
  cp->add_option("--out", cfg.out_path, "output CSV path")->required();

  auto* su = app.add_subcommand("suite", "run the acceptance experiment bundles");
  su->add_option("--only", cfg.only, "run a single criterion 1..11")->check(CLI::Range(1, 11));
  su->add_option("--seed", cfg.seed, "seed for the randomized oracle corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.n_set = mkn->count() > 0 || dfn->count() > 0;

  try {
    if (mk->parsed()) return cmd_make(cfg);
    if (pr->parsed()) return cmd_profile(cfg);
    if (rt->parsed()) return cmd_roots(cfg);
    if (cv->parsed()) return cmd_conv(cfg);
    if (df->parsed()) return cmd_diff(cfg);
    if (tr->parsed()) return cmd_transform(cfg);
    if (cp->parsed()) return cmd_compare(cfg);
    if (su->parsed()) return cmd_suite(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const pk::error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
