#include "knotinv/error.hpp"

namespace knotinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::OffsetTooLarge: return "OffsetTooLarge";
    case ErrorCode::CurvatureVanishes: return "CurvatureVanishes";
    case ErrorCode::FramingMismatch: return "FramingMismatch";
    case ErrorCode::CurvesIntersect: return "CurvesIntersect";
    case ErrorCode::NearSelfIntersection: return "NearSelfIntersection";
    case ErrorCode::CenterHit: return "CenterHit";
    case ErrorCode::CenterOnCurve: return "CenterOnCurve";
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::PointOnCurvePoint: return "PointOnCurvePoint";
    case ErrorCode::DegenerateSphere: return "DegenerateSphere";
    case ErrorCode::NonIntersecting: return "NonIntersecting";
    case ErrorCode::TubeViolation: return "TubeViolation";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::DiagonalPoint: return "DiagonalPoint";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPreset:
    case ErrorCode::InvalidParams:
    case ErrorCode::InvalidConfig:
    case ErrorCode::ParseError:
    case ErrorCode::RegularityViolation:
    case ErrorCode::TooFewSamples:
      return true;
    default:
      return false;
  }
}

KnotError::KnotError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace knotinv
