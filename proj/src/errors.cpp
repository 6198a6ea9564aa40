#include "psesk/errors.hpp"

namespace psesk {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::TruncationError: return "TruncationError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::SingularOverlap: return "SingularOverlap";
    case ErrorCode::NotInversionSymmetric: return "NotInversionSymmetric";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::GapClosed: return "GapClosed";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::EdgeLeakage: return "EdgeLeakage";
    case ErrorCode::QuadratureOverflow: return "QuadratureOverflow";
    case ErrorCode::NotEnoughBoundStates: return "NotEnoughBoundStates";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace psesk
