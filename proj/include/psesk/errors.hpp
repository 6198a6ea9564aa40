#pragma once

#include <stdexcept>
#include <string>

namespace psesk {

enum class ErrorCode {
  DomainError,
  PoleError,
  InvalidParameter,
  NotOrthonormal,
  TruncationError,
  DimensionMismatch,
  NonHermitian,
  SpectrumOutOfRange,
  SingularOverlap,
  NotInversionSymmetric,
  EmptyBlock,
  GapClosed,
  GridTooCoarse,
  DegenerateAngle,
  EdgeLeakage,
  QuadratureOverflow,
  NotEnoughBoundStates,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace psesk
