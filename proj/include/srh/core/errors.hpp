#pragma once

#include <stdexcept>
#include <string>

namespace srh {

// Exit codes used by the CLI. Keep the numbers stable; scripts key off them.
enum class ErrorCode : int {
  usage = 2,
  config = 3,
  domain = 4,
  positivity = 5,
  blowup = 6,
  admissibility = 7,
  direction = 8,
  membership = 9,
  singular = 10,
  order = 11,
  radius = 12,
  resample = 13,
  degenerate_study = 14,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define SRH_DEFINE_ERROR(Name, code_value)                 \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& what)                 \
        : Error(ErrorCode::code_value, what) {}            \
  }

SRH_DEFINE_ERROR(ConfigError, config);
SRH_DEFINE_ERROR(DomainError, domain);
SRH_DEFINE_ERROR(PositivityError, positivity);
SRH_DEFINE_ERROR(BlowupError, blowup);
SRH_DEFINE_ERROR(AdmissibilityError, admissibility);
SRH_DEFINE_ERROR(DirectionError, direction);
SRH_DEFINE_ERROR(MembershipError, membership);
SRH_DEFINE_ERROR(SingularError, singular);
SRH_DEFINE_ERROR(OrderError, order);
SRH_DEFINE_ERROR(RadiusError, radius);
SRH_DEFINE_ERROR(ResampleError, resample);
SRH_DEFINE_ERROR(DegenerateStudyError, degenerate_study);

#undef SRH_DEFINE_ERROR

}  // namespace srh
