#pragma once

#include <stdexcept>
#include <string>

namespace pathpair {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidGraph,
  kInvalidPairing,
  kMissingLabels,
  kInstanceTooLarge,
  kPreconditionViolated,
  kLayerSolverFailed,
  kSweepInvariantViolated,
  kBalancingFailed,
  kEdgeConflict,
  kMatchingFailed,
  kRepairStalled,
  kParse,
  kInternal,
};

const char* to_string(ErrorCode code);

// Base exception for every library failure. The code is machine readable,
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pathpair
