#pragma once

#include <stdexcept>
#include <string>

namespace annulus {

// Failure taxonomy. The CLI maps these onto its exit codes: malformed
// input (1), domain errors (2), numerical-certificate failures (3).
enum class errc {
  domain,                     // precondition on inputs violated
  undefined,                  // operation undefined for this input (f == 0, ...)
  zero_function,
  truncation,                 // trusted degree range too small
  ill_conditioned,            // dynamic range bound exceeded in recovery
  near_zero_on_contour,
  non_integer_winding,
  vanishing_in_annulus,
  winding_mismatch,
  not_unimodular,
  no_nonvanishing_annulus,
  symbol_not_invertible,
  inconsistent_period_claim,
  small_divisor,
  precision_exhausted,
  parse,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::domain: return "DomainError";
    case errc::undefined: return "UndefinedError";
    case errc::zero_function: return "ZeroFunction";
    case errc::truncation: return "TruncationError";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::near_zero_on_contour: return "NearZeroOnContour";
    case errc::non_integer_winding: return "NonIntegerWinding";
    case errc::vanishing_in_annulus: return "VanishingInAnnulus";
    case errc::winding_mismatch: return "WindingMismatch";
    case errc::not_unimodular: return "NotUnimodular";
    case errc::no_nonvanishing_annulus: return "NoNonvanishingAnnulus";
    case errc::symbol_not_invertible: return "SymbolNotInvertible";
    case errc::inconsistent_period_claim: return "InconsistentPeriodClaim";
    case errc::small_divisor: return "SmallDivisor";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::parse: return "ParseError";
  }
  return "UnknownError";
}

// "bad usage" vs "the math says no": parse problems exit 1, violated
// preconditions exit 2, failed numerical certificates exit 3.
inline int errc_exit_code(errc c) {
  switch (c) {
    case errc::parse:
      return 1;
    case errc::domain:
    case errc::undefined:
    case errc::zero_function:
    case errc::truncation:
      return 2;
    default:
      return 3;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct small_divisor_error : error {
  small_divisor_error(int index, const std::string& msg)
      : error(errc::small_divisor, msg), index(index) {}
  int index;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace annulus
