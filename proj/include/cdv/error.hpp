#pragma once

#include <stdexcept>
#include <string>

namespace cdv {

enum class ErrorCode {
  Unbounded,
  Empty,
  RedundantFacet,
  DuplicateNormal,
  NotAdjacent,
  DegenerateFace,
  InconsistentDiagonal,
  StepTooLarge,
  NoConvergence,
  SizeMismatch,
  CorankMismatch,
  CorankNot3,
  ClosingDefect,
  RefinementViolated,
  IllConditionedFit,
  OriginNotInterior,
  NotDimension3,
  NonParallelResidual,
  DegenerateTetrahedron,
  InconsistentCycle,
  UnsupportedDimension,
  BadParams,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::RedundantFacet: return "RedundantFacet";
    case ErrorCode::DuplicateNormal: return "DuplicateNormal";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::InconsistentDiagonal: return "InconsistentDiagonal";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::CorankMismatch: return "CorankMismatch";
    case ErrorCode::CorankNot3: return "CorankNot3";
    case ErrorCode::ClosingDefect: return "ClosingDefect";
    case ErrorCode::RefinementViolated: return "RefinementViolated";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NotDimension3: return "NotDimension3";
    case ErrorCode::NonParallelResidual: return "NonParallelResidual";
    case ErrorCode::DegenerateTetrahedron: return "DegenerateTetrahedron";
    case ErrorCode::InconsistentCycle: return "InconsistentCycle";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code plus up to two facet/vertex indices.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, int index0 = -1, int index1 = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code), index0_(index0), index1_(index1) {}

  ErrorCode code() const { return code_; }
  int index0() const { return index0_; }
  int index1() const { return index1_; }

 private:
  ErrorCode code_;
  int index0_;
  int index1_;
};

}  // namespace cdv
