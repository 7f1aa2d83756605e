#pragma once

#include <stdexcept>
#include <string>

namespace ppx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PPX_ERROR(Name)                 \
  struct Name : Error {                 \
    using Error::Error;                 \
  }

PPX_ERROR(ParseError);
PPX_ERROR(IllTyped);
PPX_ERROR(BoundaryMismatch);
PPX_ERROR(UnsupportedClass);
PPX_ERROR(NotMono);
PPX_ERROR(ClosureViolation);
PPX_ERROR(BasisMismatch);
PPX_ERROR(HypothesisFailed);
PPX_ERROR(GlobularRelationViolated);
PPX_ERROR(MethodDisagreement);
PPX_ERROR(DecompositionMismatch);
PPX_ERROR(PreconditionViolated);
PPX_ERROR(BoundExceeded);
PPX_ERROR(NotSteinerRepresentable);
PPX_ERROR(ExtractionFailed);
PPX_ERROR(NotACell);
PPX_ERROR(NotAnodyne);

#undef PPX_ERROR

}  // namespace ppx
