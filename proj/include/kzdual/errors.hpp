#pragma once

#include <stdexcept>
#include <string>

namespace kzdual {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define KZDUAL_ERROR(Name)               \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

KZDUAL_ERROR(DimensionMismatch);
KZDUAL_ERROR(SingularMatrix);
KZDUAL_ERROR(SpectrumMismatch);
KZDUAL_ERROR(IndexOutOfRange);
KZDUAL_ERROR(TooManyParts);
KZDUAL_ERROR(SingularPoint);
KZDUAL_ERROR(PoleAtT);
KZDUAL_ERROR(ParseError);

#undef KZDUAL_ERROR

}  // namespace kzdual
