#pragma once

#include <stdexcept>
#include <string>

namespace leviscope {

enum class ErrorCode {
  InvalidInput = 1,
  DomainSingularity,
  UnsupportedOperation,
  SamplingFailure,
  FootPointFailure,
  OutOfCollar,
  IllConditionedStep,
  WrongSide,
  InvalidDirection,
  CurvatureLimit,
  Usage,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto lvs_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leviscope
