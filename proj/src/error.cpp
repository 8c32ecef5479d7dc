#include "coherence_lab/error.hpp"

namespace coherence_lab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SameNode: return "SameNode";
    case ErrorCode::LeaderQueried: return "LeaderQueried";
    case ErrorCode::EmptyLeaderSet: return "EmptyLeaderSet";
    case ErrorCode::BadKappa: return "BadKappa";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadGapVector: return "BadGapVector";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::HeightTooSmall: return "HeightTooSmall";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::UnstableStep:
      return false;
    default:
      return true;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace coherence_lab
