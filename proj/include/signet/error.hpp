#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signet {

enum class ErrorCode {
  capacity,
  validation,
  type,
  parse,
  usage,
  unsupported,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::capacity: return "E_CAPACITY";
    case ErrorCode::validation: return "E_VALIDATION";
    case ErrorCode::type: return "E_TYPE";
    case ErrorCode::parse: return "E_PARSE";
    case ErrorCode::usage: return "E_USAGE";
    case ErrorCode::unsupported: return "E_UNSUPPORTED";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Search-space and degree limits shared by all enumerating operations.
struct Limits {
  /// Largest word length a permutation group may act on.
  std::size_t max_degree = 6;
  /// Largest number of candidates an exhaustive search may visit.
  std::size_t max_candidates = 10'000'000;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace signet
