#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eraser {

enum class Errc {
  NonInvertibleFieldElement,
  ReducibleModulus,
  SingularMatrix,
  DimensionMismatch,
  InvalidArgument,
  LetterOutOfRange,
  SizeGuard,
  NotInGroup,
  NotInSpan,
  NoSolution,
  InvertibleSampleFailed,
  PureElementSearchExhausted,
  GNotExpressible,
  AlphaPrimeOutsideV,
  AuditFailed,
  Format,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonInvertibleFieldElement: return "NonInvertibleFieldElement";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::LetterOutOfRange: return "LetterOutOfRange";
    case Errc::SizeGuard: return "SizeGuard";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::NotInSpan: return "NotInSpan";
    case Errc::NoSolution: return "NoSolution";
    case Errc::InvertibleSampleFailed: return "InvertibleSampleFailed";
    case Errc::PureElementSearchExhausted: return "PureElementSearchExhausted";
    case Errc::GNotExpressible: return "GNotExpressible";
    case Errc::AlphaPrimeOutsideV: return "AlphaPrimeOutsideV";
    case Errc::AuditFailed: return "AuditFailed";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

// Every failure in the library is reported as an Error carrying one of the
// codes above; callers that need to branch on the failure kind test code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 protected:
  struct Verbatim {};
  Error(Verbatim, Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

 private:
  Errc code_;
};

}  // namespace eraser
