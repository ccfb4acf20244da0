#include "leviscope/error.hpp"

namespace leviscope {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DomainSingularity: return "DomainSingularity";
    case ErrorCode::UnsupportedOperation: return "UnsupportedOperation";
    case ErrorCode::SamplingFailure: return "SamplingFailure";
    case ErrorCode::FootPointFailure: return "FootPointFailure";
    case ErrorCode::OutOfCollar: return "OutOfCollar";
    case ErrorCode::IllConditionedStep: return "IllConditionedStep";
    case ErrorCode::WrongSide: return "WrongSide";
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::CurvatureLimit: return "CurvatureLimit";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace leviscope
