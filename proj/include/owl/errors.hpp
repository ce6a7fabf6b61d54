#pragma once

#include <stdexcept>

namespace owl {

// Root of the library's error hierarchy.
//
// ValidationError marks inputs that violate a documented precondition and is
// always detectable before any work is done. RuntimeFailure marks numerical
// breakdown discovered mid-computation; those must never fire on well-posed
// data and are surfaced loudly rather than patched over.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class RuntimeFailure : public Error {
 public:
  using Error::Error;
};

#define OWL_DEFINE_ERROR(NAME, BASE) \
  class NAME : public BASE {         \
   public:                           \
    using BASE::BASE;                \
  }

// Input validation.
OWL_DEFINE_ERROR(Empty, ValidationError);
OWL_DEFINE_ERROR(NotSorted, ValidationError);
OWL_DEFINE_ERROR(Negative, ValidationError);
OWL_DEFINE_ERROR(AllZero, ValidationError);
OWL_DEFINE_ERROR(DimensionMismatch, ValidationError);
OWL_DEFINE_ERROR(NonFinite, ValidationError);
OWL_DEFINE_ERROR(NotMonotone, ValidationError);
OWL_DEFINE_ERROR(InvalidPartition, ValidationError);
OWL_DEFINE_ERROR(SizeMismatch, ValidationError);
OWL_DEFINE_ERROR(InvalidCut, ValidationError);
OWL_DEFINE_ERROR(InvalidRadius, ValidationError);
OWL_DEFINE_ERROR(StepTooLarge, ValidationError);
OWL_DEFINE_ERROR(InvalidArgument, ValidationError);
OWL_DEFINE_ERROR(ParseError, ValidationError);
OWL_DEFINE_ERROR(IoError, ValidationError);

// Numerical breakdown.
OWL_DEFINE_ERROR(NoMergeOccurred, RuntimeFailure);
OWL_DEFINE_ERROR(BranchExhaustion, RuntimeFailure);
OWL_DEFINE_ERROR(NoKKTPoint, RuntimeFailure);
OWL_DEFINE_ERROR(CGDivergence, RuntimeFailure);

#undef OWL_DEFINE_ERROR

}  // namespace owl
