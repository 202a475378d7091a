#pragma once

#include <stdexcept>
#include <string>

namespace woi {

enum class ErrorKind {
  UnsupportedType,
  DimensionError,
  NotComparable,
  NotDominant,
  FamilyNotSmooth,
  PoleHit,
  IncompleteInput,
  NotSubsystem,
  NotChamberStabilizer,
  InternalInconsistency,
  NotARoot,
  NotInStabilizer,
  NoConvergence,
  BadShift,
  NotDiscrete,
  NotPRegular,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::FamilyNotSmooth: return "FamilyNotSmooth";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::IncompleteInput: return "IncompleteInput";
    case ErrorKind::NotSubsystem: return "NotSubsystem";
    case ErrorKind::NotChamberStabilizer: return "NotChamberStabilizer";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::NotInStabilizer: return "NotInStabilizer";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadShift: return "BadShift";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::NotPRegular: return "NotPRegular";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace woi
