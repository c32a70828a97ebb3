#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadric {

enum class ErrorCode {
  AllZero,
  NonFinite,
  InvalidArgument,
  NoConvergence,
  DegenerateInput,
  DegenerateConic,
  InsufficientSections,
  NotCentral,
  NotOnSurface,
  SingularPoint,
  NotConoid,
  AmbiguousRay,
  NotTangent,
  NotEllipsoid,
  NotRuled,
  NonPositiveParameter,
  NoRealBeta,
  CircularInput,
  NoValidChord,
  DegenerateApex,
  ClauseMismatch,
  NotOblique,
  OpenSection,
  GeneratorMiss,
  RevolutionSpecial,
  NoParametrization,
};

std::string_view to_string(ErrorCode code);

/// Domain failure raised by the geometry library. The code is stable and
/// is what the CLI prints in its diagnostics.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw GeometryError(code, what);
}

}  // namespace quadric
