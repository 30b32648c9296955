#include "dualfrenet/errors.hpp"

namespace dualfrenet {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PureDualDivisor:      return "PureDualDivisor";
    case ErrorCode::NonPositiveRealPart:  return "NonPositiveRealPart";
    case ErrorCode::AngleSingularity:     return "AngleSingularity";
    case ErrorCode::NumericBreakdown:     return "NumericBreakdown";
    case ErrorCode::ZeroRealPart:         return "ZeroRealPart";
    case ErrorCode::InvalidLine:          return "InvalidLine";
    case ErrorCode::NotOnDualSphere:      return "NotOnDualSphere";
    case ErrorCode::IrregularCurve:       return "IrregularCurve";
    case ErrorCode::VanishingCurvature:   return "VanishingCurvature";
    case ErrorCode::ProfileSingularity:   return "ProfileSingularity";
    case ErrorCode::StepTooLarge:         return "StepTooLarge";
    case ErrorCode::PureDualLambda:       return "PureDualLambda";
    case ErrorCode::DegeneratePartner:    return "DegeneratePartner";
    case ErrorCode::NoCorrespondence:     return "NoCorrespondence";
    case ErrorCode::PairValidationFailed: return "PairValidationFailed";
    case ErrorCode::InvalidPatch:         return "InvalidPatch";
    case ErrorCode::InvalidInput:         return "InvalidInput";
  }
  return "UnknownError";
}

GeomError::GeomError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

void raise(ErrorCode code, const std::string& detail) {
  throw GeomError(code, detail);
}

} // namespace dualfrenet
