#pragma once

#include <stdexcept>
#include <string>

namespace humanshape {

// Base of every error raised by the library. Each failure mode named in the
// module contracts has its own subclass so callers can catch precisely.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HUMANSHAPE_DEFINE_ERROR(Name)            \
  class Name : public Error {                    \
   public:                                       \
    explicit Name(const std::string& what_arg)   \
        : Error(#Name ": " + what_arg) {}        \
  }

HUMANSHAPE_DEFINE_ERROR(DimensionMismatch);
HUMANSHAPE_DEFINE_ERROR(DegenerateImage);
HUMANSHAPE_DEFINE_ERROR(ConfigError);
HUMANSHAPE_DEFINE_ERROR(EmptyMask);
HUMANSHAPE_DEFINE_ERROR(NotThin);
HUMANSHAPE_DEFINE_ERROR(TooFewEndpoints);
HUMANSHAPE_DEFINE_ERROR(Unreachable);
HUMANSHAPE_DEFINE_ERROR(InvalidScore);
HUMANSHAPE_DEFINE_ERROR(NonMonotoneFrameId);
HUMANSHAPE_DEFINE_ERROR(SpecTooSmall);
HUMANSHAPE_DEFINE_ERROR(IoError);

#undef HUMANSHAPE_DEFINE_ERROR

}  // namespace humanshape
