#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumfactor {

/// Base of every domain error raised by the library. The CLI prints name()
/// and exits with status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view name() const noexcept = 0;
};

#define SUMFACTOR_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    std::string_view name() const noexcept override { return #Type; } \
  }

SUMFACTOR_DEFINE_ERROR(InvalidArgument);
SUMFACTOR_DEFINE_ERROR(SyntaxError);
SUMFACTOR_DEFINE_ERROR(UnknownGenerator);
SUMFACTOR_DEFINE_ERROR(NotRealizable);
SUMFACTOR_DEFINE_ERROR(UnsupportedHeight);
SUMFACTOR_DEFINE_ERROR(NotDivisible);
SUMFACTOR_DEFINE_ERROR(OutOfBound);
SUMFACTOR_DEFINE_ERROR(ResidueMismatch);
SUMFACTOR_DEFINE_ERROR(ParameterViolation);
SUMFACTOR_DEFINE_ERROR(Refusal);
SUMFACTOR_DEFINE_ERROR(DimensionMismatch);
SUMFACTOR_DEFINE_ERROR(DimensionTooSmall);
SUMFACTOR_DEFINE_ERROR(InvalidWitnessPair);

#undef SUMFACTOR_DEFINE_ERROR

}  // namespace sumfactor
