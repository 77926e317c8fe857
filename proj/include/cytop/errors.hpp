#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cytop {

enum class ErrorKind {
  NotFullDimensional,
  OriginNotInterior,
  NotReflexive,
  WrongDimension,
  LatticeMismatch,
  NotAPartition,
  NotLinearOnFacet,
  NonIntegralSupport,
  NotConcave,
  NotAmple,
  NoInteriorPoint,
  MixedVertices,
  ConfigMismatch,
  NotShellable,
  BadFaceIndex,
  IncompleteHomology,
  Unsupported,
  Parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::NotLinearOnFacet: return "NotLinearOnFacet";
    case ErrorKind::NonIntegralSupport: return "NonIntegralSupport";
    case ErrorKind::NotConcave: return "NotConcave";
    case ErrorKind::NotAmple: return "NotAmple";
    case ErrorKind::NoInteriorPoint: return "NoInteriorPoint";
    case ErrorKind::MixedVertices: return "MixedVertices";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::NotShellable: return "NotShellable";
    case ErrorKind::BadFaceIndex: return "BadFaceIndex";
    case ErrorKind::IncompleteHomology: return "IncompleteHomology";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cytop
