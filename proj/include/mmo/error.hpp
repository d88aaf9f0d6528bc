#pragma once

#include <stdexcept>
#include <string>

namespace mmo {

// Mirrors mmo_status in the C API; values must stay in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Parse = 2,
  DimensionMismatch = 3,
  TooLarge = 4,
  NotConverged = 5,
  NoPerfectMatching = 6,
  OddVertexCount = 7,
  Io = 8,
  OracleFailure = 9,
  NonCover = 10,
  GridOverflow = 11,
};

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

} // namespace mmo
