#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomic {

enum class ErrorCode {
  kInvalidInput,
  kElementNotInSample,
  kInvalidFunction,
  kOutOfChart,
  kOutOfDomain,
  kFlatExcluded,
  kDegenerateLoop,
  // Raised when a computation would divide by a holonomy radius that is zero
  // or only approached as a limit at the search puncture.
  kDegenerateRadius,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace holonomic
