#pragma once

#include <stdexcept>
#include <string>

namespace pfmaps {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  InvalidOrder,
  Overflow,
  DimMismatch,
  NotPSD,
  NormExceedsOne,
  NotTracePreserving,
  SingularDensity,
  BadWeights,
  BadDensity,
  NotADecomposition,
  NotAGroup,
  NotSelfAdjointMap,
  NotErgodic,
  UnknownProperty,
  ParseError,
  DimLimit,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace pfmaps
