#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dblrot {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  InvalidMap,
  OutOfSupport,
  NonReturning,
  BudgetExceeded,
  NotThreeBranches,
  NotReducibleTo3ITM,
  DegenerateRotation,
  SingularityInGap,
  NoOverlap,
  NonGeneric,
  ReductionFailed,
  GapPositionUnsupported,
  ShapeUnsupported,
  OracleMismatch,
  TieDegenerate,
  CapExceeded,
  TieOnCellBoundary,
  NegativeCoordinate,
  NonComposable,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::OutOfSupport: return "OutOfSupport";
    case ErrorKind::NonReturning: return "NonReturning";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotThreeBranches: return "NotThreeBranches";
    case ErrorKind::NotReducibleTo3ITM: return "NotReducibleTo3ITM";
    case ErrorKind::DegenerateRotation: return "DegenerateRotation";
    case ErrorKind::SingularityInGap: return "SingularityInGap";
    case ErrorKind::NoOverlap: return "NoOverlap";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::ReductionFailed: return "ReductionFailed";
    case ErrorKind::GapPositionUnsupported: return "GapPositionUnsupported";
    case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::TieDegenerate: return "TieDegenerate";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::TieOnCellBoundary: return "TieOnCellBoundary";
    case ErrorKind::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorKind::NonComposable: return "NonComposable";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// experiment drivers) can route it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dblrot
