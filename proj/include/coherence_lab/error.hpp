#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coherence_lab {

enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  BadWeight,
  BadParameter,
  NodeOutOfRange,
  Unreachable,
  Disconnected,
  SameNode,
  LeaderQueried,
  EmptyLeaderSet,
  BadKappa,
  OutOfRange,
  BadGapVector,
  BadGeometry,
  HeightTooSmall,
  OddN,
  BudgetExceeded,
  UnstableStep,
  ParseError,
  FileNotFound,
  NotApplicable,
};

std::string_view error_name(ErrorCode code);

/// True for errors caused by bad input (exit status 2 in the CLI); false for
/// failures that happen while computing on valid input (exit status 1).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace coherence_lab
