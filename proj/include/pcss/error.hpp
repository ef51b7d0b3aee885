#pragma once

#include <stdexcept>
#include <string>

namespace pcss {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    RankDeficient,
    TooLarge,
    ParseError,
};

/// Library-wide exception. The code maps 1:1 onto the C API status values.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) {
        fail(code, what);
    }
}

}  // namespace pcss
