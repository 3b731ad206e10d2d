#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgn {

enum class ErrorCode {
  indeterminate_ratio,
  parse_error,
  out_of_domain,
  invalid_argument,
  invalid_system,
  degenerate_system,
  not_division_number,
  invalid_division_seq,
  invalid_seed,
  gate_failure,
  not_proportional,
  bracket_invalid,
  internal_consistency,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::indeterminate_ratio: return "indeterminate_ratio";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_system: return "invalid_system";
    case ErrorCode::degenerate_system: return "degenerate_system";
    case ErrorCode::not_division_number: return "not_division_number";
    case ErrorCode::invalid_division_seq: return "invalid_division_seq";
    case ErrorCode::invalid_seed: return "invalid_seed";
    case ErrorCode::gate_failure: return "gate_failure";
    case ErrorCode::not_proportional: return "not_proportional";
    case ErrorCode::bracket_invalid: return "bracket_invalid";
    case ErrorCode::internal_consistency: return "internal_consistency";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Library invariants that should never break; a throw here is a bug.
inline void ensure(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::internal_consistency, what);
}

}  // namespace pgn
