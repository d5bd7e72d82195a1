#pragma once

#include <stdexcept>
#include <string>

namespace polyspec {

// Base class for all recoverable toolkit errors. Everything thrown on
// purpose by this library derives from Error; anything else escaping is a
// bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define POLYSPEC_DEFINE_ERROR(name)              \
  class name : public Error {                    \
   public:                                       \
    using Error::Error;                          \
  }

POLYSPEC_DEFINE_ERROR(SizeMismatch);
POLYSPEC_DEFINE_ERROR(UnsupportedPNorm);
POLYSPEC_DEFINE_ERROR(SingularMatrix);
POLYSPEC_DEFINE_ERROR(NotMonic);
POLYSPEC_DEFINE_ERROR(SingularLeadingCoefficient);
POLYSPEC_DEFINE_ERROR(OracleSizeExceeded);
POLYSPEC_DEFINE_ERROR(HypothesisViolation);
POLYSPEC_DEFINE_ERROR(BadInterval);
POLYSPEC_DEFINE_ERROR(OrderTooSmall);
POLYSPEC_DEFINE_ERROR(UnsupportedFamily);
POLYSPEC_DEFINE_ERROR(ParseError);
POLYSPEC_DEFINE_ERROR(ConfigError);

#undef POLYSPEC_DEFINE_ERROR

}  // namespace polyspec
