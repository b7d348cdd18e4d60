#ifndef EFLOWER_ERROR_HPP
#define EFLOWER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace eflower {

enum class ErrorCode {
  invalid_parameter,
  invalid_layer,
  degenerate_foci,
  construction_failure,
  closure_failure,
  degenerate_core,
  not_incoming,
  tangential,
  format_error,
  io_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::invalid_layer: return "invalid-layer";
    case ErrorCode::degenerate_foci: return "degenerate-foci";
    case ErrorCode::construction_failure: return "construction-failure";
    case ErrorCode::closure_failure: return "closure-failure";
    case ErrorCode::degenerate_core: return "degenerate-core";
    case ErrorCode::not_incoming: return "not-incoming";
    case ErrorCode::tangential: return "tangential";
    case ErrorCode::format_error: return "format-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }

  // Offending side/arc index where one applies, else -1.
  int index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace eflower

#endif  // EFLOWER_ERROR_HPP
