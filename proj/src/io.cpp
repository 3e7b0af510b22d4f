#include "profilekit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "profilekit/errors.hpp"
#include "profilekit/numeric.hpp"

namespace profilekit {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string logpoly_to_json(const LogPoly& p) {
  json j;
  j["cap"] = p.cap;
  j["reflected"] = p.reflected;
  json arr = json::array();
  for (double v : p.logc) {
    if (v == num::neg_inf) arr.push_back("-inf");
    else arr.push_back(v);
  }
  j["logc"] = std::move(arr);
  return j.dump();
}

LogPoly logpoly_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::io, "logpoly_from_json: not valid JSON");
  if (!j.is_object() || !j.contains("cap") || !j.contains("reflected") || !j.contains("logc"))
    fail(errc::io, "logpoly_from_json: expected fields cap, reflected, logc");
  LogPoly p;
  if (!j["cap"].is_number_integer()) fail(errc::io, "logpoly_from_json: cap must be an integer");
  p.cap = j["cap"].get<int>();
  if (!j["reflected"].is_boolean()) fail(errc::io, "logpoly_from_json: reflected must be a bool");
  p.reflected = j["reflected"].get<bool>();
  if (!j["logc"].is_array()) fail(errc::io, "logpoly_from_json: logc must be an array");
  bool any_finite = false;
  for (const auto& v : j["logc"]) {
    if (v.is_string()) {
      if (v.get<std::string>() != "-inf")
        fail(errc::io, "logpoly_from_json: the only string coefficient allowed is \"-inf\"");
      p.logc.push_back(num::neg_inf);
    } else if (v.is_number()) {
      const double x = v.get<double>();
      if (!std::isfinite(x)) fail(errc::io, "logpoly_from_json: coefficients must be finite or \"-inf\"");
      p.logc.push_back(x);
      any_finite = true;
    } else {
      fail(errc::io, "logpoly_from_json: coefficients must be numbers or \"-inf\"");
    }
  }
  if (p.cap < 0 || static_cast<int>(p.logc.size()) != p.cap + 1)
    fail(errc::io, "logpoly_from_json: logc must have cap+1 entries");
  if (!any_finite) fail(errc::io, "logpoly_from_json: polynomial has no finite coefficient");
  return p;
}

LogPoly read_logpoly(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "read_logpoly: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return logpoly_from_json(ss.str());
}

void write_logpoly(const std::string& path, const LogPoly& p) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "write_logpoly: cannot open " + path);
  out << logpoly_to_json(p) << "\n";
  if (!out) fail(errc::io, "write_logpoly: write failed for " + path);
}

void write_profile_csv(const std::string& path, const Profile& prof) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "write_profile_csv: cannot open " + path);
  out << "alpha,g,exp_neg_gprime\n";
  for (std::size_t i = 0; i < prof.grid.size(); ++i)
    out << format_g17(prof.grid[i]) << ',' << format_g17(prof.g[i]) << ','
        << format_g17(prof.exp_neg_gprime[i]) << '\n';
  if (!out) fail(errc::io, "write_profile_csv: write failed for " + path);
}

void write_roots_csv(const std::string& path, const std::vector<double>& roots) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "write_roots_csv: cannot open " + path);
  out << "root\n";
  for (double r : roots) out << format_g17(r) << '\n';
  if (!out) fail(errc::io, "write_roots_csv: write failed for " + path);
}

namespace {

const char* kind_name(TransformSample::Kind k) {
  switch (k) {
    case TransformSample::Kind::G: return "G";
    case TransformSample::Kind::R: return "R";
    case TransformSample::Kind::S: return "S";
    case TransformSample::Kind::psi: return "psi";
    case TransformSample::Kind::exp_gprime: return "exp_gprime";
  }
  return "?";
}

}  // namespace

void write_transform_csv(const std::string& path, const TransformSample& s) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "write_transform_csv: cannot open " + path);
  out << "t,value\n";
  for (const auto& pt : s.points)
    out << format_g17(pt.first) << ',' << format_g17(pt.second) << '\n';
  if (!out) fail(errc::io, "write_transform_csv: write failed for " + path);
  json j;
  j["kind"] = kind_name(s.kind);
  j["domain_lo"] = s.domain_lo;
  j["domain_hi"] = s.domain_hi;
  j["open_lo"] = s.open_lo;
  j["open_hi"] = s.open_hi;
  std::ofstream side(path + ".json");
  if (!side) fail(errc::io, "write_transform_csv: cannot open " + path + ".json");
  side << j.dump() << "\n";
  if (!side) fail(errc::io, "write_transform_csv: write failed for " + path + ".json");
}

std::vector<double> read_roots_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "read_roots_file: cannot open " + path);
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    // trim whitespace and skip blanks
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) { first = false; continue; }
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      if (first) { first = false; continue; }  // header line
      fail(errc::io, "read_roots_file: bad line '" + tok + "' in " + path);
    }
    first = false;
  }
  return out;
}

namespace {

const char* variant_name(MeasureSpec::Kind k) {
  switch (k) {
    case MeasureSpec::Kind::dirac_mixture: return "dirac_mixture";
    case MeasureSpec::Kind::uniform: return "uniform";
    case MeasureSpec::Kind::nu_ab_kappa: return "nu_ab_kappa";
    case MeasureSpec::Kind::mu_kappa: return "mu_kappa";
    case MeasureSpec::Kind::bernoulli01: return "bernoulli01";
  }
  fail(errc::io, "measure_spec_to_json: unknown variant");
}

double number_field(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    fail(errc::io, std::string("measure_spec_from_json: expected numeric field ") + field);
  return j[field].get<double>();
}

std::vector<double> array_field(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    fail(errc::io, std::string("measure_spec_from_json: expected array field ") + field);
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number())
      fail(errc::io, std::string("measure_spec_from_json: non-numeric entry in ") + field);
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string measure_spec_to_json(const MeasureSpec& m) {
  json j;
  j["variant"] = variant_name(m.kind);
  switch (m.kind) {
    case MeasureSpec::Kind::dirac_mixture:
      j["atoms"] = m.atoms;
      j["weights"] = m.weights;
      break;
    case MeasureSpec::Kind::uniform:
      j["lo"] = m.lo;
      j["hi"] = m.hi;
      break;
    case MeasureSpec::Kind::nu_ab_kappa:
      j["a"] = m.a;
      j["b"] = m.b;
      j["kappa"] = m.kappa;
      break;
    case MeasureSpec::Kind::mu_kappa:
    case MeasureSpec::Kind::bernoulli01:
      j["kappa"] = m.kappa;
      break;
  }
  return j.dump();
}

MeasureSpec measure_spec_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::io, "measure_spec_from_json: not valid JSON");
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
    fail(errc::io, "measure_spec_from_json: expected a string field variant");
  const std::string variant = j["variant"].get<std::string>();
  // route through the factories so their argument validation applies
  try {
    if (variant == "dirac_mixture")
      return dirac_mixture(array_field(j, "atoms"), array_field(j, "weights"));
    if (variant == "uniform")
      return uniform_measure(number_field(j, "lo"), number_field(j, "hi"));
    if (variant == "nu_ab_kappa")
      return nu_ab_measure(number_field(j, "a"), number_field(j, "b"), number_field(j, "kappa"));
    if (variant == "mu_kappa")
      return mu_kappa_measure(number_field(j, "kappa"));
    if (variant == "bernoulli01")
      return bernoulli01_measure(number_field(j, "kappa"));
  } catch (const error& e) {
    fail(errc::io, std::string("measure_spec_from_json: ") + e.what());
  }
  fail(errc::io, "measure_spec_from_json: unknown variant '" + variant + "'");
}

}  // namespace profilekit
