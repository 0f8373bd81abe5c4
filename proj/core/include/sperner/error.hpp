#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sperner {

enum class ErrorCode {
  BadGround,
  EmptyFamily,
  BadSegmentSize,
  BadIndex,
  NotMonotone,
  UnknownBound,
  EmptyBlock,
  InfeasibleParams,
  AntichainTooSmall,
  GroundTooLarge,
  BadConfig,
};

std::string_view to_string(ErrorCode code);

// Every precondition failure in the library surfaces as this exception. The
// message names the violated condition; code() is stable for callers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sperner
