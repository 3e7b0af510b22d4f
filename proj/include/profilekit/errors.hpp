#pragma once

#include <stdexcept>
#include <string>

namespace profilekit {

// one exception type for the whole library; kind() drives CLI exit codes
enum class errc {
  argument,       // malformed call (sizes, caps, flags)
  domain,         // value outside the mathematical domain of the operation
  degree,         // degree precondition violated / result not representable
  divisibility,   // multiplicative-convolution divisibility precondition
  zero_poly,      // operation would produce the zero polynomial
  degenerate,     // degenerate measure or single-coefficient profile
  range,          // query outside the invertible range of a transform
  extrapolation,  // profile query outside the sampled derivative range
  singularity,    // evaluation on a support cut or at an atom
  shape,          // concavity/monotonicity shape check failed
  ladder,         // certified sign-change count mismatch in the root ladder
  consistency,    // dual-path or residual certification failed
  io,             // file/serialization failure
};

const char* errc_name(errc k) noexcept;

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& msg)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

// carries the offending level and bracket of a certified mismatch
class ladder_error : public error {
 public:
  ladder_error(int level, double lo, double hi, const std::string& msg)
      : error(errc::ladder, msg), level(level), lo(lo), hi(hi) {}
  int level;
  double lo, hi;
};

// carries the achievable query window
class extrapolation_error : public error {
 public:
  extrapolation_error(double t_min, double t_max, const std::string& msg)
      : error(errc::extrapolation, msg), t_min(t_min), t_max(t_max) {}
  double t_min, t_max;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

}  // namespace profilekit
