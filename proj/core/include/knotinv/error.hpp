#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotinv {

enum class ErrorCode {
  UnknownPreset,
  InvalidParams,
  InvalidConfig,
  ParseError,
  RegularityViolation,
  TooFewSamples,
  ToleranceNotMet,
  OffsetTooLarge,
  CurvatureVanishes,
  FramingMismatch,
  CurvesIntersect,
  NearSelfIntersection,
  CenterHit,
  CenterOnCurve,
  CollinearPoints,
  CoincidentPoints,
  PointOnCurvePoint,
  DegenerateSphere,
  NonIntersecting,
  TubeViolation,
  SearchExhausted,
  DiagonalPoint,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed user input rather than numerics.
bool is_input_error(ErrorCode code);

class KnotError : public std::runtime_error {
 public:
  KnotError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace knotinv
