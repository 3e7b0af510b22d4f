#pragma once

#include <string>
#include <vector>

#include "profilekit/closedform.hpp"
#include "profilekit/logpoly.hpp"
#include "profilekit/profile.hpp"
#include "profilekit/transforms.hpp"

namespace profilekit {

// LogPoly <-> JSON {"cap", "reflected", "logc"}; -inf entries are the string
// "-inf" (JSON has no infinities); malformed input -> errc::io
std::string logpoly_to_json(const LogPoly& p);
LogPoly logpoly_from_json(const std::string& text);

LogPoly read_logpoly(const std::string& path);
void write_logpoly(const std::string& path, const LogPoly& p);

// CSV emitters, 17 significant digits, header row first
void write_profile_csv(const std::string& path, const Profile& prof);
void write_roots_csv(const std::string& path, const std::vector<double>& roots);

// transform CSV plus a JSON sidecar at path + ".json" carrying kind and domain
void write_transform_csv(const std::string& path, const TransformSample& s);

// one root per line; a single non-numeric leading line is treated as a header
std::vector<double> read_roots_file(const std::string& path);

// MeasureSpec <-> JSON {"variant", params...}; round trips through the
// factory validations
std::string measure_spec_to_json(const MeasureSpec& m);
MeasureSpec measure_spec_from_json(const std::string& text);

std::string format_g17(double v);

}  // namespace profilekit
