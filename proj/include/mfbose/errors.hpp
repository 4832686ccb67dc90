#pragma once

#include <stdexcept>
#include <string>

namespace mfbose {

// Every failure raised by the library carries a stable machine-readable code
// that the CLI echoes in its error records.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define MFBOSE_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& message) : Error(#Name, message) {}      \
  }

MFBOSE_DEFINE_ERROR(InvalidArgument);
MFBOSE_DEFINE_ERROR(TailNotConverged);
MFBOSE_DEFINE_ERROR(BracketNotFound);
MFBOSE_DEFINE_ERROR(BoxTooSmall);
MFBOSE_DEFINE_ERROR(ConcavityViolated);
MFBOSE_DEFINE_ERROR(DimensionTooLarge);
MFBOSE_DEFINE_ERROR(UnknownMode);
MFBOSE_DEFINE_ERROR(BasisMismatch);
MFBOSE_DEFINE_ERROR(NumericalOverflow);
MFBOSE_DEFINE_ERROR(TruncationUnfaithful);
MFBOSE_DEFINE_ERROR(QuadratureNotConverged);
MFBOSE_DEFINE_ERROR(InvalidState);
MFBOSE_DEFINE_ERROR(ConfigError);

#undef MFBOSE_DEFINE_ERROR

}  // namespace mfbose
