#pragma once

#include <stdexcept>
#include <string>

namespace dualfrenet {

// Structured failure modes.  Every throwing operation in the library reports
// one of these codes; the CLI prints the code name on the diagnostic stream
// and maps it to its exit status.
enum class ErrorCode {
  PureDualDivisor,      // division by a zero-real-part dual scalar
  NonPositiveRealPart,  // sqrt of a dual scalar with re <= 0
  AngleSingularity,     // acos/dual angle at |cos| ~ 1 (parallel directions)
  NumericBreakdown,     // NaN or Inf surfaced at an operation boundary
  ZeroRealPart,         // norm/normalize of a dual vector with zero real part
  InvalidLine,          // line with a non-unit direction
  NotOnDualSphere,      // dual vector fails the unit-sphere constraints
  IrregularCurve,       // vanishing real speed inside the parameter range
  VanishingCurvature,   // Frenet frame undefined (kappa real part ~ 0)
  ProfileSingularity,   // curvature profile not positive over the range
  StepTooLarge,         // per-step frame drift above the integration budget
  PureDualLambda,       // Mannheim offset with zero-real-part lambda
  DegeneratePartner,    // partner curve collapses (zero speed)
  NoCorrespondence,     // foot-point correspondence not monotone/solvable
  PairValidationFailed, // generated pair fails its own validation gate
  InvalidPatch,         // ruled patch with inconsistent arrays
  InvalidInput,         // malformed configuration or file content
};

const char* error_name(ErrorCode code);

class GeomError : public std::runtime_error {
public:
  GeomError(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

} // namespace dualfrenet
